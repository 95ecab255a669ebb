//! Exact arithmetic over rationals and quadratic towers.

pub mod quadratic;
pub mod rational;
pub mod tower;

pub use rational::{int, rat, Rational};
pub use tower::{common_tower, Tower, TowerDescriptor, TowerElement};
