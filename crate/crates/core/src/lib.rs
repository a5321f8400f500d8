//! Exact fair division of indivisible goods among agents with unequal entitlements.
//!
//! All arithmetic is exact: item values are integers and every derived
//! quantity (entitlements, prices, bids, budgets, shares) is a [`Rat`].

pub mod bidding;
pub mod error;
pub mod fixtures;
pub mod greedy_efx;
pub mod instance;
pub mod knapsack;
pub mod limits;
pub mod lp;
pub mod ordered;
pub mod scalar;
pub mod shares;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{Agent, Allocation, Instance, Valuation};
pub use limits::Limits;
pub use scalar::{format_rat, parse_rat, rat, Rat, Scalar, Value};
