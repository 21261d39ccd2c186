//! Variables with finite frames, domains as sorted variable sets, and
//! row-major configuration indexing.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the number of configurations a dense domain may have.
pub const DEFAULT_CONFIG_CAP: u64 = 1 << 24;

/// Position of a variable in its catalog. Catalogs are sorted by name, so
/// comparing ids compares names.
pub type VarId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub frame: Vec<String>,
}

/// The declared variables of a model, kept in lexicographic name order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableCatalog {
    vars: Vec<Variable>,
    by_name: HashMap<String, VarId>,
    cap: u64,
}

impl VariableCatalog {
    pub fn new<I, N, F, V>(variables: I) -> Result<Self>
    where
        I: IntoIterator<Item = (N, F)>,
        N: Into<String>,
        F: IntoIterator<Item = V>,
        V: Into<String>,
    {
        let mut vars: Vec<Variable> = Vec::new();
        for (name, frame) in variables {
            let name = name.into();
            let frame: Vec<String> = frame.into_iter().map(Into::into).collect();
            if frame.is_empty() {
                return Err(Error::EmptyFrame(name));
            }
            for (i, v) in frame.iter().enumerate() {
                if frame[..i].contains(v) {
                    return Err(Error::DuplicateValue {
                        variable: name,
                        value: v.clone(),
                    });
                }
            }
            vars.push(Variable { name, frame });
        }
        vars.sort_by(|a, b| a.name.cmp(&b.name));
        for w in vars.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateVariable(w[0].name.clone()));
            }
        }
        let by_name = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), i))
            .collect();
        Ok(VariableCatalog {
            vars,
            by_name,
            cap: DEFAULT_CONFIG_CAP,
        })
    }

    /// Catalog of variables named by their frame sizes, values labelled `0..size`.
    pub fn with_sizes<N: Into<String>>(vars: impl IntoIterator<Item = (N, usize)>) -> Result<Self> {
        Self::new(
            vars.into_iter()
                .map(|(n, k)| (n, (0..k).map(|i| i.to_string()).collect::<Vec<_>>())),
        )
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.vars[id].name
    }

    pub fn frame(&self, id: VarId) -> &[String] {
        &self.vars[id].frame
    }

    pub fn frame_size(&self, id: VarId) -> usize {
        self.vars[id].frame.len()
    }

    pub fn id(&self, name: &str) -> Result<VarId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn value_index(&self, id: VarId, label: &str) -> Result<usize> {
        self.vars[id]
            .frame
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownValue {
                variable: self.vars[id].name.clone(),
                value: label.to_string(),
            })
    }

    /// Domain from variable names, in any order.
    pub fn domain<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Domain> {
        let ids = names
            .into_iter()
            .map(|n| self.id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Domain::from_ids(ids))
    }

    pub fn full_domain(&self) -> Domain {
        Domain((0..self.vars.len()).collect())
    }

    pub fn contains_domain(&self, d: &Domain) -> bool {
        d.vars().iter().all(|&v| v < self.vars.len())
    }

    /// Number of configurations of `d`, checked against the cap.
    pub fn config_count(&self, d: &Domain) -> Result<usize> {
        let mut count: u128 = 1;
        for &v in d.vars() {
            count = count.saturating_mul(self.frame_size(v) as u128);
        }
        if count > self.cap as u128 {
            return Err(Error::SizeCap {
                count,
                cap: self.cap,
            });
        }
        Ok(count as usize)
    }

    pub fn shape(&self, d: &Domain) -> Result<Shape> {
        self.config_count(d)?;
        Ok(Shape::new(d.vars().iter().map(|&v| self.frame_size(v)).collect()))
    }

    pub fn enumerate_configs(&self, d: &Domain) -> Result<Vec<Configuration>> {
        let shape = self.shape(d)?;
        Ok((0..shape.count())
            .map(|i| Configuration {
                domain: d.clone(),
                values: shape.decode(i),
            })
            .collect())
    }

    pub fn config_index(&self, c: &Configuration) -> Result<usize> {
        self.check_config(c)?;
        Ok(self.shape(&c.domain)?.encode(&c.values))
    }

    pub fn config_at(&self, d: &Domain, index: usize) -> Result<Configuration> {
        let shape = self.shape(d)?;
        if index >= shape.count() {
            return Err(Error::InvalidConfiguration(format!(
                "index {index} out of range for {}",
                self.display(d)
            )));
        }
        Ok(Configuration {
            domain: d.clone(),
            values: shape.decode(index),
        })
    }

    pub fn check_config(&self, c: &Configuration) -> Result<()> {
        if c.values.len() != c.domain.len() {
            return Err(Error::InvalidConfiguration(format!(
                "{} values for a domain of {} variables",
                c.values.len(),
                c.domain.len()
            )));
        }
        for (&v, &x) in c.domain.vars().iter().zip(&c.values) {
            if v >= self.vars.len() || x >= self.frame_size(v) {
                return Err(Error::InvalidConfiguration(format!(
                    "value index {x} out of range"
                )));
            }
        }
        Ok(())
    }

    /// For every configuration of `from` (row-major), the index of its
    /// restriction to `to`.
    pub(crate) fn restriction_map(&self, from: &Domain, to: &Domain) -> Result<Vec<usize>> {
        if !to.is_subset(from) {
            return Err(self.not_subset(to, from));
        }
        let shape = self.shape(from)?;
        let target = self.shape(to)?;
        // stride of each `from` variable inside the `to` layout (0 if absent)
        let mut pos = 0;
        let strides: Vec<usize> = from
            .vars()
            .iter()
            .map(|v| {
                if to.vars().get(pos) == Some(v) {
                    pos += 1;
                    target.strides[pos - 1]
                } else {
                    0
                }
            })
            .collect();
        let mut out = Vec::with_capacity(shape.count());
        let mut digits = vec![0usize; from.len()];
        let mut idx = 0usize;
        for _ in 0..shape.count() {
            out.push(idx);
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                idx += strides[k];
                if digits[k] < shape.sizes[k] {
                    break;
                }
                idx -= strides[k] * digits[k];
                digits[k] = 0;
            }
        }
        Ok(out)
    }

    pub(crate) fn not_subset(&self, sub: &Domain, sup: &Domain) -> Error {
        Error::NotSubset {
            sub: self.display(sub),
            sup: self.display(sup),
        }
    }

    /// `{A,B}` style rendering of a domain.
    pub fn display(&self, d: &Domain) -> String {
        let names: Vec<String> = d
            .vars()
            .iter()
            .map(|&v| match self.vars.get(v) {
                Some(var) => var.name.clone(),
                None => format!("#{v}"),
            })
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// `(A=a0,B=b1)` style rendering of a configuration.
    pub fn display_config(&self, c: &Configuration) -> String {
        let parts: Vec<String> = c
            .domain
            .vars()
            .iter()
            .zip(&c.values)
            .map(|(&v, &x)| format!("{}={}", self.name(v), self.frame(v)[x]))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// True when two handles denote the same catalog.
pub fn same_catalog(a: &std::sync::Arc<VariableCatalog>, b: &std::sync::Arc<VariableCatalog>) -> bool {
    std::sync::Arc::ptr_eq(a, b) || a == b
}

/// Sizes and row-major strides of a domain; the last variable varies fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    count: usize,
}

impl Shape {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut strides = vec![0; sizes.len()];
        let mut acc = 1;
        for k in (0..sizes.len()).rev() {
            strides[k] = acc;
            acc *= sizes[k];
        }
        Shape {
            sizes,
            strides,
            count: acc,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        values.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let x = index / s;
                index %= s;
                x
            })
            .collect()
    }
}

/// A sorted set of variables. The empty domain is the lattice bottom.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domain(Vec<VarId>);

impl Domain {
    pub fn empty() -> Self {
        Domain(Vec::new())
    }

    pub fn from_ids(ids: impl IntoIterator<Item = VarId>) -> Self {
        let mut v: Vec<VarId> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Domain(v)
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn position(&self, v: VarId) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn is_subset(&self, other: &Domain) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn union(&self, other: &Domain) -> Domain {
        Domain::from_ids(self.0.iter().chain(&other.0).copied())
    }

    pub fn intersection(&self, other: &Domain) -> Domain {
        Domain(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn difference(&self, other: &Domain) -> Domain {
        Domain(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn is_disjoint(&self, other: &Domain) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(|v| format!("#{v}")).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

impl FromIterator<VarId> for Domain {
    fn from_iter<T: IntoIterator<Item = VarId>>(iter: T) -> Self {
        Domain::from_ids(iter)
    }
}

/// One value index per variable of `domain`, aligned to its sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub domain: Domain,
    pub values: Vec<usize>,
}

impl Configuration {
    pub fn new(domain: Domain, values: Vec<usize>) -> Self {
        Configuration { domain, values }
    }

    pub fn empty() -> Self {
        Configuration {
            domain: Domain::empty(),
            values: Vec::new(),
        }
    }

    pub fn value_of(&self, v: VarId) -> Option<usize> {
        self.domain.position(v).map(|p| self.values[p])
    }
}

/// Coordinate projection of `c` onto `s`.
pub fn restrict(c: &Configuration, s: &Domain) -> Result<Configuration> {
    let values = s
        .vars()
        .iter()
        .map(|&v| {
            c.value_of(v).ok_or_else(|| Error::NotSubset {
                sub: s.to_string(),
                sup: c.domain.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Configuration {
        domain: s.clone(),
        values,
    })
}

/// `s ⊥ t | r` in the subset lattice: `s ∩ t ⊆ r`.
pub fn cond_indep_subsets(s: &Domain, t: &Domain, r: &Domain) -> bool {
    s.vars().iter().all(|&v| !t.contains(v) || r.contains(v))
}
