//! High-precision re-evaluation of borderline assertions.
//!
//! Any inequality whose f64 sides land within 1e-6 of each other is
//! recomputed here at 192 mantissa bits (about 57 decimal digits) before
//! a verdict is declared, so gap certifications cannot flip on rounding.

use super::real::Real;
use astro_float::{BigFloat, Consts, RoundingMode};
use std::cell::RefCell;

const PRECISION: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

#[derive(Clone, Debug)]
pub(crate) struct Hp(BigFloat);

impl Real for Hp {
    fn of(v: f64) -> Self {
        Hp(BigFloat::from_f64(v, PRECISION))
    }
    fn add(&self, o: &Self) -> Self {
        Hp(self.0.add(&o.0, PRECISION, RM))
    }
    fn sub(&self, o: &Self) -> Self {
        Hp(self.0.sub(&o.0, PRECISION, RM))
    }
    fn mul(&self, o: &Self) -> Self {
        Hp(self.0.mul(&o.0, PRECISION, RM))
    }
    fn div(&self, o: &Self) -> Self {
        Hp(self.0.div(&o.0, PRECISION, RM))
    }
    fn log2(&self) -> Self {
        CONSTS.with(|cc| Hp(self.0.log2(PRECISION, RM, &mut cc.borrow_mut())))
    }
    fn sqrt(&self) -> Self {
        Hp(self.0.sqrt(PRECISION, RM))
    }
    fn lt(&self, o: &Self) -> bool {
        self.0 < o.0
    }
}

/// Decide `lhs <= rhs` where both sides were computed in f64; borderline
/// comparisons are settled by re-running the expressions at high
/// precision. `hp` must evaluate the same two sides.
pub(crate) fn certify_le(
    lhs: f64,
    rhs: f64,
    hp: impl FnOnce() -> (Hp, Hp),
) -> bool {
    if (lhs - rhs).abs() > 1e-6 {
        return lhs <= rhs;
    }
    let (l, r) = hp();
    // 1e-12 absorbs constraints that hold with exact equality
    !r.add(&Hp::of(1e-12)).lt(&l)
}
