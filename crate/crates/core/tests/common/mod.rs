//! Independent fixed-point oracle for radical comparison.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use seshadri::Radical;

const FIXED_BITS: u64 = 200;

/// `floor(value * 2^200)` by integer root extraction. Off by less than 2 from
/// the true scaled value.
pub fn fixed_point(r: &Radical) -> BigUint {
    let d = r.index();
    let p = r.radicand().numer().magnitude().clone();
    let q = r.radicand().denom().magnitude().clone();
    let scaled = (p << (FIXED_BITS * u64::from(d))) / q;
    scaled.nth_root(d)
}

/// Order from the fixed-point evaluation, or `None` when the two values are
/// too close for it to decide.
pub fn fixed_point_order(a: &Radical, b: &Radical) -> Option<Ordering> {
    let gap = BigInt::from(fixed_point(a)) - BigInt::from(fixed_point(b));
    if gap >= BigInt::from(3) {
        Some(Ordering::Greater)
    } else if gap <= BigInt::from(-3) {
        Some(Ordering::Less)
    } else {
        None
    }
}
