//! Minimal double-double (two-f64, ~31 significant digits) arithmetic.
//!
//! Used where an alternating binomial sum must be accumulated without the
//! cancellation swamping f64 (the max-eavesdropper pdf expansion). Only the
//! handful of operations that sum needs are implemented.

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let err = b - (s - a);
    Dd { hi: s, lo: err }
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion for integers up to ~2^106 (binomial coefficients).
    pub fn from_u128(v: u128) -> Self {
        let hi = v as f64;
        let lo = (v as i128 - hi as i128) as f64;
        quick_two_sum(hi, lo)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        quick_two_sum(s.hi, lo)
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        quick_two_sum(p.hi, lo)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from_f64(x))
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: u32) -> Dd {
        let mut base = self;
        let mut n = n;
        let mut acc = Dd::from_f64(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_keeps_cancelled_bits() {
        // (1 + 2^-60) - 1 in plain f64 loses the small part entirely.
        let one_plus = Dd::from_f64(1.0).add(Dd::from_f64(2f64.powi(-60)));
        let diff = one_plus.add(Dd::from_f64(-1.0));
        assert_eq!(diff.to_f64(), 2f64.powi(-60));
    }

    #[test]
    fn powi_matches_exact_integers() {
        let d = Dd::from_f64(3.0).powi(20);
        assert_eq!(d.to_f64(), 3f64.powi(20));
        assert_eq!(d.lo, 0.0);
    }

    #[test]
    fn binomial_identity_high_precision() {
        // sum_i C(n,i) u^(n-i) v^i == (u+v)^n even when u+v is tiny.
        let n = 19u32;
        let u = 1.25f64;
        let v = -1.25f64 + 2f64.powi(-30);
        let mut binom = 1.0f64;
        let mut acc = Dd::from_f64(0.0);
        for i in 0..=n {
            let term = Dd::from_f64(binom)
                .mul(Dd::from_f64(u).powi(n - i))
                .mul(Dd::from_f64(v).powi(i));
            acc = acc.add(term);
            binom = binom * (n - i) as f64 / (i + 1) as f64;
        }
        let want = (u + v).powi(n as i32);
        let got = acc.to_f64();
        assert!(
            ((got - want) / want).abs() < 1e-12,
            "got {got:e} want {want:e}"
        );
    }
}
