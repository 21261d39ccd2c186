//! Semiring valuations: dense tables over the configurations of a domain.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{same_catalog, Configuration, Domain, VariableCatalog};
use crate::error::{Error, Result};
use crate::fmt_num;
use crate::random;
use crate::report::CheckReport;
use crate::semiring::{Carrier, Semiring};

#[derive(Debug, Clone)]
pub struct Valuation {
    semiring: Semiring,
    catalog: Arc<VariableCatalog>,
    domain: Domain,
    table: Vec<f64>,
}

impl PartialEq for Valuation {
    /// Structural equality with exact table comparison.
    fn eq(&self, other: &Self) -> bool {
        self.semiring == other.semiring
            && same_catalog(&self.catalog, &other.catalog)
            && self.domain == other.domain
            && self.table == other.table
    }
}

impl Valuation {
    pub fn new(
        semiring: Semiring,
        catalog: Arc<VariableCatalog>,
        domain: Domain,
        table: Vec<f64>,
    ) -> Result<Self> {
        if !catalog.contains_domain(&domain) {
            return Err(Error::InvalidConfiguration(format!(
                "domain {domain} is not drawn from the catalog"
            )));
        }
        let n = catalog.config_count(&domain)?;
        if table.len() != n {
            return Err(Error::TableLength {
                expected: n,
                found: table.len(),
            });
        }
        for &v in &table {
            semiring.check_value(v)?;
        }
        Ok(Valuation {
            semiring,
            catalog,
            domain,
            table,
        })
    }

    pub fn from_fn(
        semiring: Semiring,
        catalog: Arc<VariableCatalog>,
        domain: Domain,
        f: impl Fn(&[usize]) -> f64,
    ) -> Result<Self> {
        let table = catalog
            .enumerate_configs(&domain)?
            .iter()
            .map(|c| f(&c.values))
            .collect();
        Self::new(semiring, catalog, domain, table)
    }

    fn constant(semiring: Semiring, catalog: Arc<VariableCatalog>, domain: Domain, v: f64) -> Result<Self> {
        let n = catalog.config_count(&domain)?;
        Ok(Valuation {
            semiring,
            catalog,
            domain,
            table: vec![v; n],
        })
    }

    pub fn unit(semiring: Semiring, catalog: Arc<VariableCatalog>, domain: Domain) -> Result<Self> {
        Self::constant(semiring, catalog, domain, semiring.one())
    }

    pub fn null(semiring: Semiring, catalog: Arc<VariableCatalog>, domain: Domain) -> Result<Self> {
        let z = semiring.require_zero()?;
        Self::constant(semiring, catalog, domain, z)
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn catalog(&self) -> &Arc<VariableCatalog> {
        &self.catalog
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn value(&self, c: &Configuration) -> Result<f64> {
        if c.domain != self.domain {
            return Err(Error::DomainMismatch {
                expected: self.catalog.display(&self.domain),
                found: self.catalog.display(&c.domain),
            });
        }
        Ok(self.table[self.catalog.config_index(c)?])
    }

    fn compatible(&self, other: &Valuation) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch(self.semiring.id(), other.semiring.id()));
        }
        if !same_catalog(&self.catalog, &other.catalog) {
            return Err(Error::CatalogMismatch);
        }
        Ok(())
    }

    /// Pointwise product on the union domain.
    pub fn combine(&self, other: &Valuation) -> Result<Valuation> {
        self.compatible(other)?;
        let s = &self.semiring;
        let u = self.domain.union(&other.domain);
        let left = self.catalog.restriction_map(&u, &self.domain)?;
        let right = self.catalog.restriction_map(&u, &other.domain)?;
        let table = left
            .iter()
            .zip(&right)
            .map(|(&i, &j)| s.mul(self.table[i], other.table[j]))
            .collect();
        Ok(Valuation {
            semiring: *s,
            catalog: self.catalog.clone(),
            domain: u,
            table,
        })
    }

    /// Sums out the variables outside `t`.
    pub fn project(&self, t: &Domain) -> Result<Valuation> {
        if !t.is_subset(&self.domain) {
            return Err(self.catalog.not_subset(t, &self.domain));
        }
        if *t == self.domain {
            return Ok(self.clone());
        }
        let s = &self.semiring;
        let map = self.catalog.restriction_map(&self.domain, t)?;
        let n = self.catalog.config_count(t)?;
        let mut table: Vec<Option<f64>> = vec![None; n];
        for (i, &j) in map.iter().enumerate() {
            let v = self.table[i];
            table[j] = Some(match table[j] {
                Some(acc) => s.add(acc, v),
                None => v,
            });
        }
        Ok(Valuation {
            semiring: *s,
            catalog: self.catalog.clone(),
            domain: t.clone(),
            table: table.into_iter().map(|v| v.expect("every cell has a preimage")).collect(),
        })
    }

    /// Cylindrical extension to `t ⊇ d(φ)`, i.e. `φ · 1_t`.
    pub fn vacuous_extend(&self, t: &Domain) -> Result<Valuation> {
        if !self.domain.is_subset(t) {
            return Err(self.catalog.not_subset(&self.domain, t));
        }
        if *t == self.domain {
            return Ok(self.clone());
        }
        self.combine(&Valuation::unit(self.semiring, self.catalog.clone(), t.clone())?)
    }

    pub fn supports_transport(&self) -> bool {
        self.semiring.flags().idempotent_add
    }

    /// `t_t(φ) = e_t(π_{d(φ)∩t}(φ))`; needs idempotent addition.
    pub fn transport(&self, t: &Domain) -> Result<Valuation> {
        if !self.supports_transport() {
            return Err(Error::Capability(format!(
                "transport needs idempotent addition, which {} lacks",
                self.semiring.id()
            )));
        }
        self.project(&self.domain.intersection(t))?.vacuous_extend(t)
    }

    /// Transport when available, otherwise `π_t(φ · 1_t)`.
    pub fn marginal(&self, t: &Domain) -> Result<Valuation> {
        if self.supports_transport() {
            self.transport(t)
        } else {
            self.vacuous_extend(&self.domain.union(t))?.project(t)
        }
    }

    pub fn is_null(&self) -> bool {
        self.semiring.zero().is_some() && self.table.iter().all(|&v| self.semiring.is_zero(v))
    }

    /// Entrywise comparator equality on identical domains.
    pub fn approx_eq(&self, other: &Valuation) -> bool {
        self.semiring == other.semiring
            && self.domain == other.domain
            && self.table.len() == other.table.len()
            && self.table.iter().zip(&other.table).all(|(&a, &b)| self.semiring.eq(a, b))
    }

    /// Largest entrywise absolute difference (0 when both are the same infinity).
    pub fn max_deviation(&self, other: &Valuation) -> f64 {
        self.table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| if a == b { 0.0 } else { (a - b).abs() })
            .fold(0.0, f64::max)
    }

    fn require_arithmetic(&self, op: &str) -> Result<()> {
        if matches!(self.semiring.carrier(), Carrier::Arithmetic) {
            Ok(())
        } else {
            Err(Error::Capability(format!(
                "{op} is defined for the arithmetic semiring only, not {}",
                self.semiring.id()
            )))
        }
    }

    /// Divides by the total; arithmetic semiring only.
    pub fn normalize(&self) -> Result<Valuation> {
        self.require_arithmetic("normalize")?;
        let total: f64 = self.table.iter().sum();
        if self.semiring.is_zero(total) {
            return Err(Error::ZeroMass);
        }
        Ok(Valuation {
            table: self.table.iter().map(|v| v / total).collect(),
            ..self.clone()
        })
    }

    /// `q(λ) = 1/π_t(p)(λ)` where the marginal is nonzero, 0 elsewhere.
    pub fn invert_regular(&self, t: &Domain) -> Result<Valuation> {
        self.require_arithmetic("invert_regular")?;
        let m = self.project(t)?;
        let s = self.semiring;
        Ok(Valuation {
            table: m
                .table
                .iter()
                .map(|&v| if s.is_zero(v) { 0.0 } else { 1.0 / v })
                .collect(),
            ..m
        })
    }

    /// `{A,B}[v0,v1,…]` rendering used in witnesses.
    pub fn describe(&self) -> String {
        let vals: Vec<String> = self.table.iter().map(|&v| fmt_num(v)).collect();
        format!("{}[{}]", self.catalog.display(&self.domain), vals.join(","))
    }
}

/// Randomized valuation-algebra axiom suite over small random valuations.
pub fn check_valuation_axioms(s: &Semiring, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("valuation-axioms {}", s.id()), Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = s.flags();
    let transport = f.idempotent_add;
    let idempotent = f.idempotent_add && f.idempotent_mul;
    let has_zero = s.zero().is_some();

    for law in [
        "S1 commutative",
        "S1 associative",
        "S2 labeling",
        "S3 unit and null",
        "S3 nullity",
        "S3 stability",
        "S4 stepwise projection",
        "S5 combination",
        "vacuous extension",
        "A4 transport",
        "A5 combination",
        "A6 identity",
        "A7 idempotency",
        "idempotent transport",
    ] {
        report.declare(law);
    }
    if !f.positive || !has_zero {
        report.not_applicable("S3 nullity", "semiring is not positive");
    }
    if !transport {
        for law in ["S3 stability", "A4 transport", "A5 combination", "A6 identity"] {
            report.not_applicable(law, "addition is not idempotent");
        }
    }
    if !idempotent {
        report.not_applicable("A7 idempotency", "needs idempotent addition and multiplication");
        report.not_applicable("idempotent transport", "needs idempotent addition and multiplication");
    }

    const VARS: usize = 4;
    for _ in 0..samples.max(1) {
        let sizes: Vec<usize> = (0..VARS).map(|_| rng.gen_range(1..=3)).collect();
        let cat = Arc::new(
            VariableCatalog::with_sizes(["A", "B", "C", "D"].into_iter().zip(sizes))
                .expect("fixed names"),
        );
        let (dx, dy, dz) = (
            random::domain(&mut rng, VARS, 0.5),
            random::domain(&mut rng, VARS, 0.5),
            random::domain(&mut rng, VARS, 0.5),
        );
        let phi = random::valuation(&mut rng, s, &cat, &dx);
        let psi = random::valuation(&mut rng, s, &cat, &dy);
        let chi = random::valuation(&mut rng, s, &cat, &dz);
        let ok = |r: Result<bool>| r.unwrap_or(false);
        let w2 = || format!("phi={} psi={}", phi.describe(), psi.describe());

        let pq = phi.combine(&psi).expect("same catalog");
        report.check("S1 commutative", pq.approx_eq(&psi.combine(&phi).unwrap()), w2);
        let l = pq.combine(&chi).unwrap();
        let r = phi.combine(&psi.combine(&chi).unwrap()).unwrap();
        report.check("S1 associative", l.approx_eq(&r), || {
            format!("{} chi={}", w2(), chi.describe())
        });

        let sub = dx.intersection(&dz);
        let proj = phi.project(&sub).unwrap();
        report.check(
            "S2 labeling",
            *pq.domain() == dx.union(&dy) && *proj.domain() == sub,
            w2,
        );

        let unit_x = Valuation::unit(*s, cat.clone(), dx.clone()).unwrap();
        let mut unit_ok = phi.combine(&unit_x).unwrap().approx_eq(&phi);
        unit_ok &= Valuation::unit(*s, cat.clone(), dx.clone())
            .unwrap()
            .combine(&Valuation::unit(*s, cat.clone(), dy.clone()).unwrap())
            .unwrap()
            .approx_eq(&Valuation::unit(*s, cat.clone(), dx.union(&dy)).unwrap());
        if has_zero {
            let null_x = Valuation::null(*s, cat.clone(), dx.clone()).unwrap();
            unit_ok &= phi.combine(&null_x).unwrap().approx_eq(&null_x);
        }
        report.check("S3 unit and null", unit_ok, || format!("phi={}", phi.describe()));

        if f.positive && has_zero {
            report.check("S3 nullity", proj.is_null() == phi.is_null(), || {
                format!("phi={} projected to {}", phi.describe(), cat.display(&sub))
            });
        }
        if transport {
            let stable = unit_x.project(&sub).unwrap();
            report.check(
                "S3 stability",
                stable.approx_eq(&Valuation::unit(*s, cat.clone(), sub.clone()).unwrap()),
                || format!("1 on {} projected to {}", cat.display(&dx), cat.display(&sub)),
            );
        }

        // S4: x ≤ y ≤ d(φ)
        let mid = sub.union(&dx.intersection(&dy));
        let step = phi.project(&mid).unwrap().project(&sub).unwrap();
        report.check("S4 stepwise projection", step.approx_eq(&proj), || {
            format!("phi={} via {} to {}", phi.describe(), cat.display(&mid), cat.display(&sub))
        });

        // S5: π_x(φψ) = φ · π_{x∧y}(ψ)
        let lhs = pq.project(&dx).unwrap();
        let rhs = phi.combine(&psi.project(&dx.intersection(&dy)).unwrap()).unwrap();
        report.check("S5 combination", lhs.approx_eq(&rhs), || {
            format!("{}: {} vs {}", w2(), lhs.describe(), rhs.describe())
        });

        let u = dx.union(&dy);
        let ext = phi
            .vacuous_extend(&u)
            .unwrap()
            .combine(&psi.vacuous_extend(&u).unwrap())
            .unwrap();
        report.check("vacuous extension", ext.approx_eq(&pq), w2);

        if transport {
            // A4: x ⊥ y | z with d(φ) = x
            let dr = dx.intersection(&dy).union(&dz);
            let direct = phi.transport(&dy).unwrap();
            let via = phi.transport(&dr).unwrap().transport(&dy).unwrap();
            report.check("A4 transport", direct.approx_eq(&via), || {
                format!(
                    "phi={} y={} z={}: {} vs {}",
                    phi.describe(),
                    cat.display(&dy),
                    cat.display(&dr),
                    direct.describe(),
                    via.describe()
                )
            });
            // A5: d(φ)=x, d(ψ)=y, x ⊥ y | z
            let lhs = pq.transport(&dr).unwrap();
            let rhs = phi
                .transport(&dr)
                .unwrap()
                .combine(&psi.transport(&dr).unwrap())
                .unwrap();
            report.check("A5 combination", lhs.approx_eq(&rhs), || {
                format!("{} z={}", w2(), cat.display(&dr))
            });
            report.check("A6 identity", ok(phi.transport(&dx).map(|t| t.approx_eq(&phi))), || {
                format!("phi={}", phi.describe())
            });
        }

        if idempotent {
            let a7 = phi.combine(&phi.transport(&sub).unwrap()).unwrap();
            report.check("A7 idempotency", a7.approx_eq(&phi), || {
                format!("phi={} y={}", phi.describe(), cat.display(&sub))
            });
            // φ · t_y(φ) = t_{x∨y}(φ) for arbitrary y
            let lhs = phi.combine(&phi.transport(&dy).unwrap()).unwrap();
            let rhs = phi.transport(&dx.union(&dy)).unwrap();
            report.check("idempotent transport", lhs.approx_eq(&rhs), || {
                format!("phi={} y={}", phi.describe(), cat.display(&dy))
            });
        }
    }
    report
}
