//! A dense two-phase tableau simplex, just enough to decide feasibility.

use fairshare::Rat;
use num_traits::{One, Signed, Zero};

/// Is there `λ ≥ 0` over `columns` (bitmasks over `m` items) with `Σ λ = 1`
/// and `Σ_{S ∋ j} λ_S ≤ b` for every item `j`?
pub(crate) fn distribution_exists(m: usize, columns: &[usize], b: &Rat) -> bool {
    // rows 0..m: coverage with slack; row m: total mass with an artificial
    let k = columns.len();
    let width = k + m + 1 + 1;
    let art = k + m;
    let rhs = width - 1;
    let mut t: Vec<Vec<Rat>> = vec![vec![Rat::zero(); width]; m + 1];
    for (c, &mask) in columns.iter().enumerate() {
        for (j, row) in t.iter_mut().enumerate().take(m) {
            if mask >> j & 1 == 1 {
                row[c] = Rat::one();
            }
        }
        t[m][c] = Rat::one();
    }
    for j in 0..m {
        t[j][k + j] = Rat::one();
        t[j][rhs] = b.clone();
    }
    t[m][art] = Rat::one();
    t[m][rhs] = Rat::one();
    let mut basis: Vec<usize> = (0..m).map(|j| k + j).chain([art]).collect();

    // phase one: minimise the artificial, i.e. maximise the reduced row below
    loop {
        let reduced = |col: usize| -> Rat {
            let cost = |var: usize| if var == art { -Rat::one() } else { Rat::zero() };
            let mut r = -cost(col);
            for (row, &var) in basis.iter().enumerate() {
                r += cost(var) * &t[row][col];
            }
            r
        };
        let Some(enter) = (0..rhs).find(|&c| reduced(c).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for row in 0..=m {
            if t[row][enter].is_positive() {
                let ratio = &t[row][rhs] / &t[row][enter];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && basis[row] < basis[*r]),
                };
                if better {
                    leave = Some((row, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase one is bounded");
        let p = t[pivot_row][enter].clone();
        for x in t[pivot_row].iter_mut() {
            *x /= &p;
        }
        for row in 0..=m {
            if row != pivot_row && !t[row][enter].is_zero() {
                let f = t[row][enter].clone();
                for c in 0..width {
                    let delta = &f * &t[pivot_row][c];
                    t[row][c] -= delta;
                }
            }
        }
        basis[pivot_row] = enter;
    }
    basis
        .iter()
        .position(|&var| var == art)
        .is_none_or(|row| t[row][rhs].is_zero())
}
