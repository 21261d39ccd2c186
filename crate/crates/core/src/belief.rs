//! Set potentials in sparse focal-set form: combination, transport,
//! Dempster's rule, belief/commonality transforms and degrees of support.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::compare::Tolerance;
use crate::domain::{same_catalog, Configuration, Domain, VariableCatalog};
use crate::error::{Error, Result};
use crate::fmt_num;

/// Default bound on the frame size for explicit subset tables.
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// A set of configurations of one domain, stored as sorted row-major indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FocalSet {
    domain: Domain,
    configs: Vec<usize>,
}

impl FocalSet {
    /// From configuration indices; sorts and rejects duplicates or
    /// out-of-range indices.
    pub fn from_indices(cat: &VariableCatalog, domain: Domain, mut configs: Vec<usize>) -> Result<Self> {
        let n = cat.config_count(&domain)?;
        configs.sort_unstable();
        if configs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPotential("duplicate configuration in focal set".into()));
        }
        if configs.last().is_some_and(|&i| i >= n) {
            return Err(Error::InvalidConfiguration("configuration index out of range".into()));
        }
        Ok(FocalSet { domain, configs })
    }

    pub fn from_configs(cat: &VariableCatalog, domain: Domain, configs: &[Configuration]) -> Result<Self> {
        let idx = configs
            .iter()
            .map(|c| {
                if c.domain != domain {
                    return Err(Error::DomainMismatch {
                        expected: cat.display(&domain),
                        found: cat.display(&c.domain),
                    });
                }
                cat.config_index(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(cat, domain, idx)
    }

    pub fn empty(domain: Domain) -> Self {
        FocalSet {
            domain,
            configs: Vec::new(),
        }
    }

    pub fn full(cat: &VariableCatalog, domain: Domain) -> Result<Self> {
        let n = cat.config_count(&domain)?;
        Ok(FocalSet {
            domain,
            configs: (0..n).collect(),
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn indices(&self) -> &[usize] {
        &self.configs
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.configs.binary_search(&index).is_ok()
    }

    pub fn is_subset(&self, other: &FocalSet) -> bool {
        self.configs.iter().all(|&i| other.contains(i))
    }

    pub fn intersects(&self, other: &FocalSet) -> bool {
        self.configs.iter().any(|&i| other.contains(i))
    }

    pub fn intersection(&self, other: &FocalSet) -> FocalSet {
        FocalSet {
            domain: self.domain.clone(),
            configs: self.configs.iter().copied().filter(|&i| other.contains(i)).collect(),
        }
    }

    pub fn complement(&self, cat: &VariableCatalog) -> Result<FocalSet> {
        let n = cat.config_count(&self.domain)?;
        Ok(FocalSet {
            domain: self.domain.clone(),
            configs: (0..n).filter(|&i| !self.contains(i)).collect(),
        })
    }

    /// Cylindrical extension to `u ⊇ domain`.
    pub fn cylinder(&self, cat: &VariableCatalog, u: &Domain) -> Result<FocalSet> {
        let map = cat.restriction_map(u, &self.domain)?;
        Ok(FocalSet {
            domain: u.clone(),
            configs: (0..map.len()).filter(|&i| self.contains(map[i])).collect(),
        })
    }

    /// Image under restriction to `t ⊆ domain`.
    pub fn project(&self, cat: &VariableCatalog, t: &Domain) -> Result<FocalSet> {
        let map = cat.restriction_map(&self.domain, t)?;
        let mut configs: Vec<usize> = self.configs.iter().map(|&i| map[i]).collect();
        configs.sort_unstable();
        configs.dedup();
        Ok(FocalSet {
            domain: t.clone(),
            configs,
        })
    }

    /// Extension to the union domain followed by projection to `t`.
    pub fn transport(&self, cat: &VariableCatalog, t: &Domain) -> Result<FocalSet> {
        let u = self.domain.union(t);
        self.cylinder(cat, &u)?.project(cat, t)
    }

    /// `{(X=a),(X=b)}` rendering.
    pub fn render(&self, cat: &VariableCatalog) -> String {
        let parts: Vec<String> = self
            .configs
            .iter()
            .map(|&i| {
                cat.config_at(&self.domain, i)
                    .map(|c| cat.display_config(&c))
                    .unwrap_or_else(|_| format!("#{i}"))
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Unnormalized potential; may carry mass on the empty set.
    Raw,
    /// Basic probability assignment: masses sum to one, no empty focal set.
    Bpa,
}

#[derive(Debug, Clone)]
pub struct SetPotential {
    catalog: Arc<VariableCatalog>,
    domain: Domain,
    focal: BTreeMap<Vec<usize>, f64>,
    kind: Kind,
    conflict: f64,
    tolerance: Tolerance,
}

impl PartialEq for SetPotential {
    fn eq(&self, other: &Self) -> bool {
        same_catalog(&self.catalog, &other.catalog)
            && self.domain == other.domain
            && self.focal == other.focal
            && self.kind == other.kind
            && self.conflict == other.conflict
    }
}

impl SetPotential {
    pub fn new(
        catalog: Arc<VariableCatalog>,
        domain: Domain,
        entries: impl IntoIterator<Item = (FocalSet, f64)>,
        kind: Kind,
    ) -> Result<Self> {
        if !catalog.contains_domain(&domain) {
            return Err(Error::InvalidPotential(format!("domain {domain} is not in the catalog")));
        }
        catalog.config_count(&domain)?;
        let mut focal: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (set, mass) in entries {
            if set.domain != domain {
                return Err(Error::DomainMismatch {
                    expected: catalog.display(&domain),
                    found: catalog.display(&set.domain),
                });
            }
            if !mass.is_finite() || mass < 0.0 {
                return Err(Error::InvalidPotential(format!("mass {mass} is not a nonnegative number")));
            }
            if mass > 0.0 {
                *focal.entry(set.configs).or_insert(0.0) += mass;
            }
        }
        let p = SetPotential {
            catalog,
            domain,
            focal,
            kind,
            conflict: 0.0,
            tolerance: Tolerance::default(),
        };
        if kind == Kind::Bpa {
            if p.focal.contains_key(&Vec::new()) {
                return Err(Error::InvalidPotential(
                    "a bpa may not assign mass to the empty set".into(),
                ));
            }
            if !p.tolerance.eq(p.total_mass(), 1.0) {
                return Err(Error::InvalidPotential(format!(
                    "bpa masses sum to {}, not 1",
                    fmt_num(p.total_mass())
                )));
            }
        }
        Ok(p)
    }

    /// The neutral bpa: all mass on the full frame.
    pub fn vacuous(catalog: Arc<VariableCatalog>, domain: Domain) -> Result<Self> {
        let full = FocalSet::full(&catalog, domain.clone())?;
        Self::new(catalog, domain, [(full, 1.0)], Kind::Bpa)
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn catalog(&self) -> &Arc<VariableCatalog> {
        &self.catalog
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Mass removed by normalization when this potential came from Dempster's rule.
    pub fn conflict(&self) -> f64 {
        self.conflict
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    /// Focal sets with their masses in canonical order.
    pub fn focal_sets(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.focal.iter().map(|(k, &m)| {
            (
                FocalSet {
                    domain: self.domain.clone(),
                    configs: k.clone(),
                },
                m,
            )
        })
    }

    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    pub fn mass(&self, s: &FocalSet) -> f64 {
        self.focal.get(&s.configs).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.focal.values().sum()
    }

    pub fn empty_mass(&self) -> f64 {
        self.focal.get(&Vec::new()).copied().unwrap_or(0.0)
    }

    fn derive(&self, domain: Domain, focal: BTreeMap<Vec<usize>, f64>, kind: Kind) -> Self {
        SetPotential {
            catalog: self.catalog.clone(),
            domain,
            focal,
            kind,
            conflict: 0.0,
            tolerance: self.tolerance,
        }
    }

    fn check_query(&self, s: &FocalSet) -> Result<()> {
        if s.domain != self.domain {
            return Err(Error::DomainMismatch {
                expected: self.catalog.display(&self.domain),
                found: self.catalog.display(&s.domain),
            });
        }
        Ok(())
    }

    /// Same focal sets up to the tolerance, treating missing entries as zero.
    pub fn approx_eq(&self, other: &SetPotential) -> bool {
        if self.domain != other.domain {
            return false;
        }
        let keys = self.focal.keys().chain(other.focal.keys());
        keys.into_iter().all(|k| {
            let a = self.focal.get(k).copied().unwrap_or(0.0);
            let b = other.focal.get(k).copied().unwrap_or(0.0);
            self.tolerance.eq(a, b)
        }) && self.tolerance.eq(self.conflict, other.conflict)
    }

    /// Unnormalized combination: intersect cylinders on the union domain.
    pub fn combine(&self, other: &SetPotential) -> Result<SetPotential> {
        if !same_catalog(&self.catalog, &other.catalog) {
            return Err(Error::CatalogMismatch);
        }
        let u = self.domain.union(&other.domain);
        let lift = |p: &SetPotential| -> Result<Vec<(FocalSet, f64)>> {
            p.focal_sets()
                .map(|(s, m)| Ok((s.cylinder(&self.catalog, &u)?, m)))
                .collect()
        };
        let (left, right) = (lift(self)?, lift(other)?);
        let mut focal: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (a, ma) in &left {
            for (b, mb) in &right {
                let m = ma * mb;
                if m > 0.0 {
                    *focal.entry(a.intersection(b).configs).or_insert(0.0) += m;
                }
            }
        }
        Ok(self.derive(u, focal, Kind::Raw))
    }

    /// Moves every focal set to domain `t`, accumulating colliding images.
    pub fn transport(&self, t: &Domain) -> Result<SetPotential> {
        if *t == self.domain {
            return Ok(self.clone());
        }
        let mut focal: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (s, m) in self.focal_sets() {
            *focal.entry(s.transport(&self.catalog, t)?.configs).or_insert(0.0) += m;
        }
        let mut out = self.derive(t.clone(), focal, self.kind);
        out.conflict = self.conflict;
        Ok(out)
    }

    /// Drops the empty focal set and rescales, recording the removed mass.
    pub fn normalize(&self) -> Result<SetPotential> {
        let total = self.total_mass();
        let empty = self.empty_mass();
        let rest = total - empty;
        if self.tolerance.is_zero(rest) || rest <= 0.0 {
            return Err(Error::TotalConflict);
        }
        let focal = self
            .focal
            .iter()
            .filter(|(k, _)| !k.is_empty())
            .map(|(k, &m)| (k.clone(), m / rest))
            .collect();
        let mut out = self.derive(self.domain.clone(), focal, Kind::Bpa);
        out.conflict = empty / total;
        Ok(out)
    }

    /// Dempster's rule: combine, discard conflict, renormalize.
    pub fn dempster_combine(&self, other: &SetPotential) -> Result<SetPotential> {
        if self.kind != Kind::Bpa || other.kind != Kind::Bpa {
            return Err(Error::InvalidPotential("Dempster's rule needs two bpa operands".into()));
        }
        self.combine(other)?.normalize()
    }

    /// `b(S) = Σ_{T⊆S} m(T)`.
    pub fn belief(&self, s: &FocalSet) -> Result<f64> {
        self.check_query(s)?;
        Ok(self.sum_where(|t| t.iter().all(|&i| s.contains(i))))
    }

    /// `q(S) = Σ_{T⊇S} m(T)`.
    pub fn commonality(&self, s: &FocalSet) -> Result<f64> {
        self.check_query(s)?;
        Ok(self.sum_where(|t| s.configs.iter().all(|i| t.binary_search(i).is_ok())))
    }

    fn sum_where(&self, pred: impl Fn(&[usize]) -> bool) -> f64 {
        self.focal.iter().filter(|(k, _)| pred(k)).map(|(_, &m)| m).sum()
    }

    fn nonconflicting_mass(&self) -> Result<f64> {
        let rest = self.total_mass() - self.empty_mass();
        if self.tolerance.is_zero(rest) || rest <= 0.0 {
            return Err(Error::TotalConflict);
        }
        Ok(rest)
    }

    /// Degree of quasi-support and degree of support of hypothesis `h`.
    pub fn degree_of_support(&self, h: &FocalSet) -> Result<(f64, f64)> {
        let qsp = self.belief(h)?;
        let rest = self.nonconflicting_mass()?;
        Ok((qsp, (qsp - self.empty_mass()) / rest))
    }

    /// Degree of plausibility: normalized mass of focal sets meeting `h`.
    pub fn degree_of_plausibility(&self, h: &FocalSet) -> Result<f64> {
        self.check_query(h)?;
        let rest = self.nonconflicting_mass()?;
        Ok(self.sum_where(|t| t.iter().any(|&i| h.contains(i))) / rest)
    }

    fn frame_size(&self, cap: usize) -> Result<usize> {
        let size = self.catalog.config_count(&self.domain)?;
        if size > cap {
            return Err(Error::SubsetCap { size, cap });
        }
        Ok(size)
    }

    fn mass_table(&self, cap: usize) -> Result<SubsetTable> {
        let size = self.frame_size(cap)?;
        let mut values = vec![0.0; 1 << size];
        for (k, &m) in &self.focal {
            values[k.iter().fold(0usize, |acc, &i| acc | 1 << i)] += m;
        }
        Ok(SubsetTable {
            domain: self.domain.clone(),
            size,
            values,
        })
    }

    /// Explicit belief table over all subsets of the frame.
    pub fn belief_table(&self, cap: usize) -> Result<SubsetTable> {
        let mut t = self.mass_table(cap)?;
        zeta_down(&mut t.values, t.size, 1.0);
        Ok(t)
    }

    /// Explicit commonality table over all subsets of the frame.
    pub fn commonality_table(&self, cap: usize) -> Result<SubsetTable> {
        let mut t = self.mass_table(cap)?;
        zeta_up(&mut t.values, t.size, 1.0);
        Ok(t)
    }

    /// Renders focal sets one per line as `mass : {…}`.
    pub fn render(&self) -> String {
        self.focal_sets()
            .map(|(s, m)| format!("{} : {}", fmt_num(m), s.render(&self.catalog)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A set function given on every subset of a frame, indexed by bitmask over
/// configuration indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetTable {
    pub domain: Domain,
    pub size: usize,
    pub values: Vec<f64>,
}

impl SubsetTable {
    pub fn new(cat: &VariableCatalog, domain: Domain, values: Vec<f64>, cap: usize) -> Result<Self> {
        let size = cat.config_count(&domain)?;
        if size > cap {
            return Err(Error::SubsetCap { size, cap });
        }
        if values.len() != 1 << size {
            return Err(Error::IncompleteTable {
                expected: 1 << size,
                found: values.len(),
            });
        }
        Ok(SubsetTable { domain, size, values })
    }

    pub fn get(&self, s: &FocalSet) -> f64 {
        self.values[s.configs.iter().fold(0usize, |acc, &i| acc | 1 << i)]
    }
}

// Sum over subsets (sign = 1.0) or Möbius inversion (sign = -1.0).
fn zeta_down(v: &mut [f64], size: usize, sign: f64) {
    for bit in 0..size {
        for mask in 0..v.len() {
            if mask >> bit & 1 == 1 {
                v[mask] += sign * v[mask ^ (1 << bit)];
            }
        }
    }
}

// Sum over supersets (sign = 1.0) or its inversion (sign = -1.0).
fn zeta_up(v: &mut [f64], size: usize, sign: f64) {
    for bit in 0..size {
        for mask in 0..v.len() {
            if mask >> bit & 1 == 0 {
                v[mask] += sign * v[mask | (1 << bit)];
            }
        }
    }
}

fn table_to_mass(cat: Arc<VariableCatalog>, t: &SubsetTable, masses: Vec<f64>) -> Result<SetPotential> {
    let tol = Tolerance::default();
    let mut entries = Vec::new();
    for (mask, m) in masses.into_iter().enumerate() {
        if tol.is_zero(m) {
            continue;
        }
        if m < 0.0 {
            return Err(Error::InvalidPotential(format!(
                "inversion yields negative mass {} on subset {mask:#b}",
                fmt_num(m)
            )));
        }
        let configs = (0..t.size).filter(|i| mask >> i & 1 == 1).collect();
        entries.push((FocalSet { domain: t.domain.clone(), configs }, m));
    }
    SetPotential::new(cat, t.domain.clone(), entries, Kind::Raw)
}

/// `m(S) = Σ_{T⊆S} (−1)^{|S−T|} b(T)`.
pub fn belief_to_mass(cat: Arc<VariableCatalog>, b: &SubsetTable) -> Result<SetPotential> {
    let mut v = b.values.clone();
    zeta_down(&mut v, b.size, -1.0);
    table_to_mass(cat, b, v)
}

/// `m(S) = Σ_{T⊇S} (−1)^{|T−S|} q(T)`.
pub fn commonality_to_mass(cat: Arc<VariableCatalog>, q: &SubsetTable) -> Result<SetPotential> {
    let mut v = q.values.clone();
    zeta_up(&mut v, q.size, -1.0);
    table_to_mass(cat, q, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame() -> (Arc<VariableCatalog>, Domain) {
        let cat = Arc::new(VariableCatalog::new([("X", vec!["a", "b"])]).unwrap());
        let d = cat.full_domain();
        (cat, d)
    }

    fn set(cat: &VariableCatalog, d: &Domain, idx: &[usize]) -> FocalSet {
        FocalSet::from_indices(cat, d.clone(), idx.to_vec()).unwrap()
    }

    fn pot(cat: &Arc<VariableCatalog>, d: &Domain, entries: &[(&[usize], f64)], kind: Kind) -> SetPotential {
        SetPotential::new(
            cat.clone(),
            d.clone(),
            entries.iter().map(|(s, m)| (set(cat, d, s), *m)),
            kind,
        )
        .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn invariants_enforced() {
        let (cat, d) = frame();
        let e = SetPotential::new(cat.clone(), d.clone(), [(FocalSet::empty(d.clone()), 1.0)], Kind::Bpa);
        assert!(matches!(e, Err(Error::InvalidPotential(_))));
        let s = SetPotential::new(cat.clone(), d.clone(), [(set(&cat, &d, &[0]), 0.5)], Kind::Bpa);
        assert!(matches!(s, Err(Error::InvalidPotential(_))));
        let z = pot(&cat, &d, &[(&[0], 0.0), (&[1], 1.0)], Kind::Bpa);
        assert_eq!(z.len(), 1);
        assert!(FocalSet::from_indices(&cat, d.clone(), vec![0, 0]).is_err());
    }

    #[test]
    fn combine_example() {
        let (cat, d) = frame();
        let m1 = pot(&cat, &d, &[(&[0], 0.6), (&[0, 1], 0.4)], Kind::Bpa);
        let m2 = pot(&cat, &d, &[(&[1], 0.5), (&[0, 1], 0.5)], Kind::Bpa);
        let m = m1.combine(&m2).unwrap();
        assert_eq!(m.kind(), Kind::Raw);
        assert!(close(m.mass(&FocalSet::empty(d.clone())), 0.30));
        assert!(close(m.mass(&set(&cat, &d, &[0])), 0.30));
        assert!(close(m.mass(&set(&cat, &d, &[1])), 0.20));
        assert!(close(m.mass(&set(&cat, &d, &[0, 1])), 0.20));
    }

    #[test]
    fn combine_with_vacuous_cylindrifies() {
        let cat = Arc::new(VariableCatalog::with_sizes([("X", 2), ("Y", 2)]).unwrap());
        let x = cat.domain(["X"]).unwrap();
        let y = cat.domain(["Y"]).unwrap();
        let m = pot(&cat, &x, &[(&[0], 0.25), (&[0, 1], 0.75)], Kind::Bpa);
        let v = SetPotential::vacuous(cat.clone(), y).unwrap();
        let c = m.combine(&v).unwrap();
        let full = cat.full_domain();
        assert!(close(c.mass(&set(&cat, &full, &[0, 1])), 0.25));
        assert!(close(c.mass(&set(&cat, &full, &[0, 1, 2, 3])), 0.75));

        let single = pot(&cat, &x, &[(&[1], 1.0)], Kind::Bpa);
        let other = pot(&cat, &cat.domain(["Y"]).unwrap(), &[(&[0], 0.5), (&[0, 1], 0.5)], Kind::Bpa);
        let cyl = set(&cat, &x, &[1]).cylinder(&cat, &full).unwrap();
        for (s, _) in single.combine(&other).unwrap().focal_sets() {
            assert!(s.is_subset(&cyl));
        }
    }

    #[test]
    fn transport_examples() {
        let cat = Arc::new(VariableCatalog::with_sizes([("X", 2), ("Y", 2)]).unwrap());
        let full = cat.full_domain();
        let x = cat.domain(["X"]).unwrap();
        let m = pot(&cat, &full, &[(&[0, 1], 1.0)], Kind::Bpa);
        assert_eq!(m.transport(&full).unwrap(), m);
        let p = m.transport(&x).unwrap();
        assert_eq!(p.len(), 1);
        assert!(close(p.mass(&set(&cat, &x, &[0])), 1.0));

        let c = pot(&cat, &full, &[(&[0], 0.4), (&[1], 0.6)], Kind::Bpa);
        let p = c.transport(&x).unwrap();
        assert_eq!(p.len(), 1);
        assert!(close(p.mass(&set(&cat, &x, &[0])), 1.0));
    }

    #[test]
    fn dempster_examples() {
        let (cat, d) = frame();
        let m1 = pot(&cat, &d, &[(&[0], 0.6), (&[0, 1], 0.4)], Kind::Bpa);
        let m2 = pot(&cat, &d, &[(&[1], 0.5), (&[0, 1], 0.5)], Kind::Bpa);
        let m = m1.dempster_combine(&m2).unwrap();
        assert_eq!(m.kind(), Kind::Bpa);
        assert!(close(m.mass(&set(&cat, &d, &[0])), 3.0 / 7.0));
        assert!(close(m.mass(&set(&cat, &d, &[1])), 2.0 / 7.0));
        assert!(close(m.mass(&set(&cat, &d, &[0, 1])), 2.0 / 7.0));
        assert!(close(m.conflict(), 0.3));

        let v = SetPotential::vacuous(cat.clone(), d.clone()).unwrap();
        let n = m1.dempster_combine(&v).unwrap();
        assert!(n.approx_eq(&m1));
        assert_eq!(n.conflict(), 0.0);

        let a = pot(&cat, &d, &[(&[0], 1.0)], Kind::Bpa);
        let b = pot(&cat, &d, &[(&[1], 1.0)], Kind::Bpa);
        assert_eq!(a.dempster_combine(&b), Err(Error::TotalConflict));
    }

    #[test]
    fn belief_and_commonality_examples() {
        let (cat, d) = frame();
        let m = pot(&cat, &d, &[(&[0], 0.3), (&[0, 1], 0.7)], Kind::Bpa);
        let (a, b, ab) = (set(&cat, &d, &[0]), set(&cat, &d, &[1]), set(&cat, &d, &[0, 1]));
        assert!(close(m.belief(&a).unwrap(), 0.3));
        assert!(close(m.belief(&ab).unwrap(), 1.0));
        assert!(close(m.commonality(&a).unwrap(), 1.0));
        assert!(close(m.commonality(&b).unwrap(), 0.7));

        let v = SetPotential::vacuous(cat.clone(), d.clone()).unwrap();
        assert_eq!(v.belief(&a).unwrap(), 0.0);
        assert_eq!(v.belief(&ab).unwrap(), 1.0);
        for s in [&a, &b, &ab] {
            assert_eq!(v.commonality(s).unwrap(), 1.0);
        }
        let other = FocalSet::empty(Domain::empty());
        assert!(matches!(m.belief(&other), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn moebius_examples() {
        let (cat, d) = frame();
        let m = pot(&cat, &d, &[(&[0], 0.3), (&[0, 1], 0.7)], Kind::Bpa);
        let b = m.belief_table(DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(b.get(&FocalSet::empty(d.clone())), 0.0);
        let back = belief_to_mass(cat.clone(), &b).unwrap();
        assert!(close(back.mass(&set(&cat, &d, &[0])), 0.3));
        assert!(close(back.mass(&set(&cat, &d, &[0, 1])), 0.7));
        assert_eq!(back.len(), 2);

        let v = SetPotential::vacuous(cat.clone(), d.clone()).unwrap();
        let r = belief_to_mass(cat.clone(), &v.belief_table(16).unwrap()).unwrap();
        assert_eq!(r.len(), 1);
        assert!(close(r.mass(&set(&cat, &d, &[0, 1])), 1.0));
        let r = commonality_to_mass(cat.clone(), &v.commonality_table(16).unwrap()).unwrap();
        assert_eq!(r.len(), 1);
        assert!(close(r.mass(&set(&cat, &d, &[0, 1])), 1.0));

        assert!(matches!(
            SubsetTable::new(&cat, d.clone(), vec![0.0; 3], 16),
            Err(Error::IncompleteTable { expected: 4, found: 3 })
        ));
        let big = Arc::new(VariableCatalog::with_sizes([("Z", 5)]).unwrap());
        let bd = big.full_domain();
        let vb = SetPotential::vacuous(big.clone(), bd).unwrap();
        assert!(matches!(vb.belief_table(4), Err(Error::SubsetCap { size: 5, cap: 4 })));
    }

    #[test]
    fn support_and_plausibility_examples() {
        let (cat, d) = frame();
        let m = pot(&cat, &d, &[(&[0], 0.3), (&[0, 1], 0.7)], Kind::Bpa);
        let (a, b, ab) = (set(&cat, &d, &[0]), set(&cat, &d, &[1]), set(&cat, &d, &[0, 1]));
        let (qsp, sp) = m.degree_of_support(&a).unwrap();
        assert!(close(qsp, 0.3) && close(sp, 0.3));
        assert!(close(m.degree_of_support(&ab).unwrap().1, 1.0));
        assert!(close(m.degree_of_plausibility(&a).unwrap(), 1.0));
        assert!(close(m.degree_of_plausibility(&b).unwrap(), 0.7));
        assert_eq!(m.degree_of_plausibility(&FocalSet::empty(d.clone())).unwrap(), 0.0);
        let dual = 1.0 - m.degree_of_support(&b.complement(&cat).unwrap()).unwrap().1;
        assert!(close(m.degree_of_plausibility(&b).unwrap(), dual));

        let m1 = pot(&cat, &d, &[(&[0], 0.6), (&[0, 1], 0.4)], Kind::Bpa);
        let m2 = pot(&cat, &d, &[(&[1], 0.5), (&[0, 1], 0.5)], Kind::Bpa);
        let raw = m1.combine(&m2).unwrap();
        let (qsp, sp) = raw.degree_of_support(&a).unwrap();
        assert!(close(qsp, 0.6));
        assert!(close(sp, 3.0 / 7.0));
        let norm = m1.dempster_combine(&m2).unwrap();
        assert!(close(norm.degree_of_support(&a).unwrap().0, sp));

        let contradiction = pot(&cat, &d, &[(&[], 1.0)], Kind::Raw);
        assert_eq!(contradiction.degree_of_support(&a), Err(Error::TotalConflict));
    }
}
