//! Commutative semirings over an `f64` carrier, with declared capability flags
//! and a randomized law checker.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compare::Tolerance;
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Declared algebraic properties. Capability gating reads these, never probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub idempotent_add: bool,
    pub positive: bool,
    pub idempotent_mul: bool,
}

impl Flags {
    pub const fn new(idempotent_add: bool, positive: bool, idempotent_mul: bool) -> Self {
        Flags {
            idempotent_add,
            positive,
            idempotent_mul,
        }
    }
}

/// Operations for a user-supplied semiring.
#[derive(Clone, Copy)]
pub struct CustomOps {
    pub name: &'static str,
    pub add: fn(f64, f64) -> f64,
    pub mul: fn(f64, f64) -> f64,
    pub zero: Option<f64>,
    pub one: f64,
    pub contains: fn(f64) -> bool,
    pub sample: fn(&mut ChaCha8Rng) -> f64,
    /// Compare with `==` instead of the tolerance.
    pub exact: bool,
}

impl fmt::Debug for CustomOps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomOps").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Carrier {
    /// {0,1} with max and min.
    Boolean,
    /// Nonnegative reals with + and ×.
    Arithmetic,
    /// Reals with −∞, max as addition and + as multiplication.
    Tropical,
    /// [0,1] with max and min.
    Bottleneck,
    /// [0,1] with max and the product t-norm.
    FuzzyProduct,
    /// The chain {0,…,k−1} with max and min.
    Chain(u32),
    Custom(CustomOps),
}

#[derive(Debug, Clone, Copy)]
pub struct Semiring {
    carrier: Carrier,
    flags: Flags,
    tolerance: Tolerance,
}

impl PartialEq for Semiring {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id() && self.flags == other.flags
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl Semiring {
    fn builtin(carrier: Carrier, flags: Flags) -> Self {
        Semiring {
            carrier,
            flags,
            tolerance: Tolerance::default(),
        }
    }

    pub fn boolean() -> Self {
        Self::builtin(Carrier::Boolean, Flags::new(true, true, true))
    }

    pub fn arithmetic() -> Self {
        Self::builtin(Carrier::Arithmetic, Flags::new(false, true, false))
    }

    pub fn tropical() -> Self {
        Self::builtin(Carrier::Tropical, Flags::new(true, false, false))
    }

    pub fn bottleneck() -> Self {
        Self::builtin(Carrier::Bottleneck, Flags::new(true, true, true))
    }

    pub fn fuzzy_product() -> Self {
        Self::builtin(Carrier::FuzzyProduct, Flags::new(true, true, false))
    }

    /// Chain lattice on `k ≥ 2` elements.
    pub fn chain(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::UnknownSemiring(format!("chain({k})")));
        }
        Ok(Self::builtin(Carrier::Chain(k), Flags::new(true, true, true)))
    }

    pub fn custom(ops: CustomOps, flags: Flags) -> Self {
        Self::builtin(Carrier::Custom(ops), flags)
    }

    /// The builtin catalog, with `chain(4)` standing for the chain family.
    pub fn builtins() -> Vec<Semiring> {
        vec![
            Self::boolean(),
            Self::arithmetic(),
            Self::tropical(),
            Self::bottleneck(),
            Self::fuzzy_product(),
            Self::chain(4).expect("k ≥ 2"),
        ]
    }

    /// Parses `boolean | arithmetic | tropical | bottleneck | fuzzy-product | chain(k)`.
    pub fn parse(id: &str) -> Result<Self> {
        let id = id.trim();
        match id {
            "boolean" => Ok(Self::boolean()),
            "arithmetic" => Ok(Self::arithmetic()),
            "tropical" => Ok(Self::tropical()),
            "bottleneck" => Ok(Self::bottleneck()),
            "fuzzy-product" => Ok(Self::fuzzy_product()),
            _ => {
                let k = id
                    .strip_prefix("chain(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.trim().parse::<u32>().ok())
                    .ok_or_else(|| Error::UnknownSemiring(id.to_string()))?;
                Self::chain(k)
            }
        }
    }

    pub fn id(&self) -> String {
        match self.carrier {
            Carrier::Boolean => "boolean".into(),
            Carrier::Arithmetic => "arithmetic".into(),
            Carrier::Tropical => "tropical".into(),
            Carrier::Bottleneck => "bottleneck".into(),
            Carrier::FuzzyProduct => "fuzzy-product".into(),
            Carrier::Chain(k) => format!("chain({k})"),
            Carrier::Custom(ops) => ops.name.into(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    /// Same operations, different declared flags.
    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    pub fn is_exact(&self) -> bool {
        match self.carrier {
            Carrier::Boolean | Carrier::Bottleneck | Carrier::Chain(_) => true,
            Carrier::Arithmetic | Carrier::Tropical | Carrier::FuzzyProduct => false,
            Carrier::Custom(ops) => ops.exact,
        }
    }

    #[inline]
    pub fn add(&self, a: f64, b: f64) -> f64 {
        match self.carrier {
            Carrier::Arithmetic => a + b,
            Carrier::Boolean
            | Carrier::Tropical
            | Carrier::Bottleneck
            | Carrier::FuzzyProduct
            | Carrier::Chain(_) => a.max(b),
            Carrier::Custom(ops) => (ops.add)(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: f64, b: f64) -> f64 {
        match self.carrier {
            Carrier::Arithmetic | Carrier::FuzzyProduct => a * b,
            // −∞ absorbs every finite value and itself
            Carrier::Tropical => a + b,
            Carrier::Boolean | Carrier::Bottleneck | Carrier::Chain(_) => a.min(b),
            Carrier::Custom(ops) => (ops.mul)(a, b),
        }
    }

    pub fn zero(&self) -> Option<f64> {
        match self.carrier {
            Carrier::Tropical => Some(f64::NEG_INFINITY),
            Carrier::Custom(ops) => ops.zero,
            _ => Some(0.0),
        }
    }

    pub fn one(&self) -> f64 {
        match self.carrier {
            Carrier::Tropical => 0.0,
            Carrier::Chain(k) => (k - 1) as f64,
            Carrier::Custom(ops) => ops.one,
            _ => 1.0,
        }
    }

    pub fn require_zero(&self) -> Result<f64> {
        self.zero()
            .ok_or_else(|| Error::Capability(format!("semiring {} has no zero element", self.id())))
    }

    pub fn contains(&self, a: f64) -> bool {
        match self.carrier {
            Carrier::Boolean => a == 0.0 || a == 1.0,
            Carrier::Arithmetic => a.is_finite() && a >= 0.0,
            Carrier::Tropical => a.is_finite() || a == f64::NEG_INFINITY,
            Carrier::Bottleneck | Carrier::FuzzyProduct => (0.0..=1.0).contains(&a),
            Carrier::Chain(k) => a.fract() == 0.0 && a >= 0.0 && a < k as f64,
            Carrier::Custom(ops) => (ops.contains)(a),
        }
    }

    pub fn check_value(&self, a: f64) -> Result<f64> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::OutsideCarrier {
                semiring: self.id(),
                value: a,
            })
        }
    }

    /// Comparator equality: exact for discrete carriers, tolerance otherwise.
    pub fn eq(&self, a: f64, b: f64) -> bool {
        if self.is_exact() {
            a == b
        } else {
            self.tolerance.eq(a, b)
        }
    }

    pub fn is_zero(&self, a: f64) -> bool {
        self.zero().is_some_and(|z| self.eq(a, z))
    }

    /// Semiring sum of a nonempty sequence; the zero for an empty one.
    pub fn sum(&self, values: impl IntoIterator<Item = f64>) -> Option<f64> {
        let mut it = values.into_iter();
        match it.next() {
            Some(first) => Some(it.fold(first, |acc, v| self.add(acc, v))),
            None => self.zero(),
        }
    }

    pub fn product(&self, values: impl IntoIterator<Item = f64>) -> f64 {
        values.into_iter().fold(self.one(), |acc, v| self.mul(acc, v))
    }

    /// Draws a carrier element. Samples hit the neutral elements often so
    /// that zero and unit laws are exercised.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let dyadic = |rng: &mut R| match rng.gen_range(0..8) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen_range(0..=64) as f64 / 64.0,
        };
        match self.carrier {
            Carrier::Boolean => rng.gen_range(0..2) as f64,
            Carrier::Arithmetic => match rng.gen_range(0..6) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.gen_range(0.0..4.0),
            },
            Carrier::Tropical => {
                if rng.gen_range(0..6) == 0 {
                    f64::NEG_INFINITY
                } else {
                    rng.gen_range(-10..=10) as f64
                }
            }
            Carrier::Bottleneck | Carrier::FuzzyProduct => dyadic(rng),
            Carrier::Chain(k) => rng.gen_range(0..k) as f64,
            Carrier::Custom(ops) => {
                let mut r = ChaCha8Rng::seed_from_u64(rng.gen());
                (ops.sample)(&mut r)
            }
        }
    }
}

/// Randomized check of the commutative-semiring laws and of the declared flags.
pub fn check_semiring_axioms(s: &Semiring, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("semiring {}", s.id()), Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = s.zero();
    let one = s.one();
    let flags = s.flags();
    let lattice = flags.idempotent_add && flags.idempotent_mul && zero.is_some();
    let v = |x: f64| crate::fmt_num(x);

    for law in [
        "add commutative",
        "mul commutative",
        "add associative",
        "mul associative",
        "distributive",
        "zero additive identity",
        "zero annihilates",
        "unit",
        "idempotent add",
        "positive",
        "idempotent mul",
        "absorption",
    ] {
        report.declare(law);
    }
    if zero.is_none() {
        report.not_applicable("zero additive identity", "no zero element");
        report.not_applicable("zero annihilates", "no zero element");
    }
    if !flags.idempotent_add {
        report.not_applicable("idempotent add", "flag not declared");
    }
    if !flags.positive {
        report.not_applicable("positive", "flag not declared");
    }
    if !flags.idempotent_mul {
        report.not_applicable("idempotent mul", "flag not declared");
    }
    if !lattice {
        report.not_applicable("absorption", "not a bounded idempotent semiring");
    }

    for _ in 0..samples.max(1) {
        let (a, b, c) = (s.sample(&mut rng), s.sample(&mut rng), s.sample(&mut rng));
        report.check("add commutative", s.eq(s.add(a, b), s.add(b, a)), || {
            format!("a={} b={}: a+b={} b+a={}", v(a), v(b), v(s.add(a, b)), v(s.add(b, a)))
        });
        report.check("mul commutative", s.eq(s.mul(a, b), s.mul(b, a)), || {
            format!("a={} b={}", v(a), v(b))
        });
        let (l, r) = (s.add(s.add(a, b), c), s.add(a, s.add(b, c)));
        report.check("add associative", s.eq(l, r), || {
            format!("a={} b={} c={}: {} vs {}", v(a), v(b), v(c), v(l), v(r))
        });
        let (l, r) = (s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c)));
        report.check("mul associative", s.eq(l, r), || {
            format!("a={} b={} c={}: {} vs {}", v(a), v(b), v(c), v(l), v(r))
        });
        let (l, r) = (s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c)));
        report.check("distributive", s.eq(l, r), || {
            format!("a={} b={} c={}: a(b+c)={} ab+ac={}", v(a), v(b), v(c), v(l), v(r))
        });
        if let Some(z) = zero {
            report.check("zero additive identity", s.eq(s.add(a, z), a), || {
                format!("a={}: a+0={}", v(a), v(s.add(a, z)))
            });
            report.check("zero annihilates", s.eq(s.mul(a, z), z), || {
                format!("a={}: a*0={}", v(a), v(s.mul(a, z)))
            });
        }
        report.check("unit", s.eq(s.mul(one, a), a), || {
            format!("a={}: 1*a={}", v(a), v(s.mul(one, a)))
        });
        if flags.idempotent_add {
            report.check("idempotent add", s.eq(s.add(a, a), a), || {
                format!("a={}: a+a={}", v(a), v(s.add(a, a)))
            });
        }
        if flags.idempotent_mul {
            report.check("idempotent mul", s.eq(s.mul(a, a), a), || {
                format!("a={}: a*a={}", v(a), v(s.mul(a, a)))
            });
        }
        if let (true, Some(z)) = (flags.positive, zero) {
            let ok = !s.eq(s.add(a, b), z) || (s.eq(a, z) && s.eq(b, z));
            report.check("positive", ok, || {
                format!("a={} b={}: a+b={} is zero", v(a), v(b), v(s.add(a, b)))
            });
        }
        if lattice {
            let ok = s.eq(s.add(a, s.mul(a, b)), a)
                && s.eq(s.mul(a, s.add(a, b)), a)
                && s.eq(s.add(a, one), one);
            report.check("absorption", ok, || format!("a={} b={}", v(a), v(b)));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_example() {
        let b = Semiring::boolean();
        assert_eq!(b.add(1.0, 1.0), 1.0);
        assert_eq!(b.mul(1.0, 0.0), 0.0);
        assert_eq!(b.zero(), Some(0.0));
        assert_eq!(b.one(), 1.0);
    }

    #[test]
    fn tropical_example() {
        let t = Semiring::tropical();
        assert_eq!(t.add(2.0, 5.0), 5.0);
        assert_eq!(t.mul(2.0, 5.0), 7.0);
        assert_eq!(t.zero(), Some(f64::NEG_INFINITY));
        assert_eq!(t.mul(3.0, f64::NEG_INFINITY), f64::NEG_INFINITY);
        assert_eq!(t.mul(f64::NEG_INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
        assert!(!t.flags().positive);
        // Declared not positive, yet max(a, b) = -inf forces a = b = -inf.
        let declared = t.with_flags(Flags::new(true, true, false));
        let r = check_semiring_axioms(&declared, 2000, 0);
        assert!(r.get("positive").unwrap().passed(), "{r}");
    }

    #[test]
    fn arithmetic_example() {
        let a = Semiring::arithmetic();
        assert!(a.eq(a.add(0.3, 0.7), 1.0));
    }

    #[test]
    fn flags_of_catalog() {
        let f = |s: Semiring| {
            let f = s.flags();
            (f.idempotent_add, f.positive, f.idempotent_mul)
        };
        assert_eq!(f(Semiring::boolean()), (true, true, true));
        assert_eq!(f(Semiring::arithmetic()), (false, true, false));
        assert_eq!(f(Semiring::tropical()), (true, false, false));
        assert!(f(Semiring::bottleneck()).0 && f(Semiring::bottleneck()).1);
        assert_eq!(f(Semiring::fuzzy_product()), (true, true, false));
        assert_eq!(f(Semiring::chain(3).unwrap()), (true, true, true));
    }

    #[test]
    fn parse_ids() {
        for s in Semiring::builtins() {
            assert_eq!(Semiring::parse(&s.id()).unwrap(), s);
        }
        assert_eq!(Semiring::parse("chain(7)").unwrap().one(), 6.0);
        assert!(Semiring::parse("chain(1)").is_err());
        assert!(Semiring::parse("min-plus").is_err());
    }

    #[test]
    fn carriers() {
        assert!(!Semiring::boolean().contains(0.5));
        assert!(!Semiring::arithmetic().contains(-1.0));
        assert!(Semiring::tropical().contains(f64::NEG_INFINITY));
        assert!(!Semiring::tropical().contains(f64::INFINITY));
        assert!(!Semiring::chain(3).unwrap().contains(3.0));
    }

    #[test]
    fn builtins_pass() {
        for s in Semiring::builtins() {
            let r = check_semiring_axioms(&s, 2000, 0);
            assert!(r.passed(), "{r}");
        }
        let r = check_semiring_axioms(&Semiring::boolean(), 100, 0);
        assert!(r.results.iter().all(|l| l.outcome == crate::report::Outcome::Pass));
    }

    #[test]
    fn arithmetic_declared_idempotent_fails() {
        let s = Semiring::arithmetic().with_flags(Flags::new(true, true, false));
        let r = check_semiring_axioms(&s, 1000, 0);
        let w = r.get("idempotent add").unwrap().witness().expect("must fail");
        assert!(w.starts_with("a="), "{w}");
        // the canonical witness
        assert_ne!(s.add(1.0, 1.0), 1.0);
    }

    fn signed_ops() -> CustomOps {
        CustomOps {
            name: "signed-arithmetic",
            add: |a, b| a + b,
            mul: |a, b| a * b,
            zero: Some(0.0),
            one: 1.0,
            contains: f64::is_finite,
            sample: |r| r.gen_range(-2..=2) as f64,
            exact: true,
        }
    }

    #[test]
    fn positivity_violation_has_witness() {
        let s = Semiring::custom(signed_ops(), Flags::new(false, true, false));
        let r = check_semiring_axioms(&s, 1000, 0);
        assert!(r.get("positive").unwrap().witness().is_some(), "{r}");
        assert!(r.get("distributive").unwrap().passed());
    }

    #[test]
    fn tropical_declared_positive_has_no_counterexample() {
        // With −∞ as zero, max(a,b) = −∞ forces a = b = −∞.
        let s = Semiring::tropical().with_flags(Flags::new(true, true, false));
        assert!(check_semiring_axioms(&s, 5000, 0).passed());
    }

    #[test]
    fn deterministic_per_seed() {
        let s = Semiring::arithmetic().with_flags(Flags::new(true, true, true));
        assert_eq!(check_semiring_axioms(&s, 500, 3), check_semiring_axioms(&s, 500, 3));
    }
}
