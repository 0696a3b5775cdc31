//! Scalar abstraction so every Gaussian formula can run in plain f64 for
//! sweeps and be re-evaluated verbatim at high precision near thresholds.

pub(crate) trait Real: Clone {
    fn of(v: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn log2(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn lt(&self, o: &Self) -> bool;
}

impl Real for f64 {
    fn of(v: f64) -> Self {
        v
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn log2(&self) -> Self {
        f64::log2(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

pub(crate) fn half_log2<T: Real>(x: &T) -> T {
    x.log2().mul(&T::of(0.5))
}

/// ½ log2(num/den).
pub(crate) fn half_log2_ratio<T: Real>(num: &T, den: &T) -> T {
    half_log2(&num.div(den))
}

/// ½ log⁺(num/den): clamped at zero once the ratio is at most one.
pub(crate) fn half_log2_pos<T: Real>(num: &T, den: &T) -> T {
    if den.lt(num) {
        half_log2_ratio(num, den)
    } else {
        T::of(0.0)
    }
}
