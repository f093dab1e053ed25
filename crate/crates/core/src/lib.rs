//! Exact unimodality checks for `(1+x)^m (1+x^k)` and the threshold
//! `m(k) ~ c k^4` for membership of `((1+x)/2)^m (1+x^k)/2` in the class E.

pub mod certmax;
pub mod eclass;
pub mod exactpoly;
pub mod search;
pub mod theorem1;
