//! The single floating-point comparison policy shared by every module.

/// Absolute-plus-relative tolerance for real-valued carriers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance { rel: 0.0, abs: 0.0 };

    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    /// `a == b` up to `abs + rel * max(|a|, |b|)`. Infinities compare equal
    /// only to themselves.
    pub fn eq(&self, a: f64, b: f64) -> bool {
        if a == b {
            return true;
        }
        if !a.is_finite() || !b.is_finite() {
            return false;
        }
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }

    pub fn is_zero(&self, a: f64) -> bool {
        self.eq(a, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinities_are_exact() {
        let t = Tolerance::default();
        assert!(t.eq(f64::NEG_INFINITY, f64::NEG_INFINITY));
        assert!(!t.eq(f64::NEG_INFINITY, -1e300));
    }

    #[test]
    fn absolute_floor_near_zero() {
        let t = Tolerance::default();
        assert!(t.eq(0.0, 1e-15));
        assert!(!t.eq(0.0, 1e-9));
        assert!(t.eq(1.0e6, 1.0e6 + 1e-4));
    }
}
