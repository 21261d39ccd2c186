//! The line-oriented model format: parsing and canonical emission.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use infalg::belief::{FocalSet, Kind, SetPotential};
use infalg::domain::DEFAULT_CONFIG_CAP;
use infalg::partition::ElementSet;
use infalg::treecomp::{EliminationSequence, LabeledTree};
use infalg::{Configuration, Domain, Partition, Semiring, Universe, Valuation, VariableCatalog};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub semiring: Option<Semiring>,
    pub catalog: Arc<VariableCatalog>,
    pub valuations: Vec<(String, Valuation)>,
    pub potentials: Vec<(String, SetPotential)>,
    pub universe: Option<Arc<Universe>>,
    pub partitions: Vec<(String, Partition)>,
    pub tree: Option<LabeledTree>,
    pub sequence: Option<EliminationSequence>,
    pub queries: Vec<Domain>,
    pub hypotheses: Vec<(String, FocalSet)>,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn lex(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if b":(){},".contains(&c) {
            out.push(Token { text: &line[i..i + 1], col: i + 1 });
            i += 1;
        } else if line[i..].starts_with("->") {
            out.push(Token { text: "->", col: i + 1 });
            i += 2;
        } else {
            let start = i;
            while i < bytes.len()
                && !bytes[i].is_ascii_whitespace()
                && !b":(){},".contains(&bytes[i])
                && !line[i..].starts_with("->")
            {
                i += 1;
            }
            out.push(Token { text: &line[start..i], col: start + 1 });
        }
    }
    out
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_col: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            col,
            message: message.into(),
        }
    }

    fn err_at(&self, i: usize, message: impl Into<String>) -> ParseError {
        let col = self.tokens.get(i).map_or(self.end_col, |t| t.col);
        self.err(col, message)
    }

    fn text(&self, i: usize) -> Option<&'a str> {
        self.tokens.get(i).map(|t| t.text)
    }

    fn expect(&self, i: usize, what: &str) -> PResult<()> {
        match self.text(i) {
            Some(t) if t == what => Ok(()),
            Some(t) => Err(self.err_at(i, format!("expected `{what}`, found `{t}`"))),
            None => Err(self.err_at(i, format!("expected `{what}`"))),
        }
    }

    fn word(&self, i: usize, what: &str) -> PResult<&'a str> {
        match self.text(i) {
            Some(t) if !is_punct(t) => Ok(t),
            Some(t) => Err(self.err_at(i, format!("expected {what}, found `{t}`"))),
            None => Err(self.err_at(i, format!("expected {what}"))),
        }
    }

    fn finish(&self, i: usize) -> PResult<()> {
        match self.text(i) {
            None => Ok(()),
            Some(t) => Err(self.err_at(i, format!("unexpected `{t}`"))),
        }
    }
}

fn is_punct(t: &str) -> bool {
    matches!(t, ":" | "(" | ")" | "{" | "}" | "," | "->")
}

fn parse_number(line: &Line, i: usize) -> PResult<f64> {
    let t = line.word(i, "a number")?;
    match t.parse::<f64>() {
        Ok(v) if !v.is_nan() => Ok(v),
        _ => Err(line.err_at(i, format!("`{t}` is not a number"))),
    }
}

fn parse_index(line: &Line, i: usize, what: &str) -> PResult<usize> {
    let t = line.word(i, what)?;
    t.parse::<usize>()
        .map_err(|_| line.err_at(i, format!("`{t}` is not {what}")))
}

/// Parser state; stanzas may only refer to what precedes them.
struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    cap: u64,
    model: Model,
    have_variables: bool,
}

pub fn parse(text: &str) -> PResult<Model> {
    parse_with_cap(text, DEFAULT_CONFIG_CAP)
}

/// Parses a model whose catalog enforces the configuration cap `cap`.
pub fn parse_with_cap(text: &str, cap: u64) -> PResult<Model> {
    let lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| Line {
            number: n + 1,
            end_col: l.find('#').unwrap_or(l.len()) + 1,
            tokens: lex(l),
        })
        .filter(|l| !l.tokens.is_empty())
        .collect();
    let catalog = VariableCatalog::with_sizes(Vec::<(String, usize)>::new())
        .expect("empty catalog")
        .with_cap(cap);
    let mut p = Parser {
        lines,
        pos: 0,
        cap,
        model: Model {
            semiring: None,
            catalog: Arc::new(catalog),
            valuations: Vec::new(),
            potentials: Vec::new(),
            universe: None,
            partitions: Vec::new(),
            tree: None,
            sequence: None,
            queries: Vec::new(),
            hypotheses: Vec::new(),
        },
        have_variables: false,
    };
    while p.pos < p.lines.len() {
        p.stanza()?;
    }
    Ok(p.model)
}

impl<'a> Parser<'a> {
    fn next_line(&mut self) -> usize {
        self.pos += 1;
        self.pos - 1
    }

    /// Indices of the body lines of a block, consuming the closing `end`.
    fn block(&mut self, opener: usize) -> PResult<Vec<usize>> {
        let mut body = Vec::new();
        loop {
            if self.pos >= self.lines.len() {
                let l = &self.lines[opener];
                return Err(l.err(1, format!("`{}` block is missing its `end`", l.tokens[0].text)));
            }
            let i = self.next_line();
            if self.lines[i].text(0) == Some("end") {
                self.lines[i].finish(1)?;
                return Ok(body);
            }
            body.push(i);
        }
    }

    fn stanza(&mut self) -> PResult<()> {
        let i = self.next_line();
        let line = &self.lines[i];
        let kw = line.tokens[0].text;
        match kw {
            "semiring" => self.semiring(i),
            "variables" => self.variables(i),
            "valuation" => self.valuation(i),
            "potential" => self.potential(i),
            "universe" => self.universe(i),
            "partition" => self.partition(i),
            "tree" => self.tree(i),
            "sequence" => self.sequence(i),
            "query" => {
                let (d, next) = self.var_list(i, 1)?;
                self.lines[i].finish(next)?;
                self.model.queries.push(d);
                Ok(())
            }
            "hypothesis" => self.hypothesis(i),
            _ => Err(line.err_at(0, format!("unknown stanza `{kw}`"))),
        }
    }

    fn semiring(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        if self.model.semiring.is_some() {
            return Err(line.err_at(0, "semiring declared twice"));
        }
        if !self.model.valuations.is_empty() {
            return Err(line.err_at(0, "semiring must precede the valuations"));
        }
        let id: String = line.tokens[1..].iter().map(|t| t.text).collect();
        if id.is_empty() {
            return Err(line.err_at(1, "expected a semiring identifier"));
        }
        let s = Semiring::parse(&id).map_err(|e| line.err_at(1, e.to_string()))?;
        self.model.semiring = Some(s);
        Ok(())
    }

    fn variables(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        if self.have_variables {
            return Err(line.err_at(0, "variables declared twice"));
        }
        line.finish(1)?;
        let body = self.block(i)?;
        let mut vars: Vec<(String, Vec<String>)> = Vec::new();
        for &j in &body {
            let l = &self.lines[j];
            let name = l.word(0, "a variable name")?;
            l.expect(1, ":")?;
            let mut frame = Vec::new();
            for k in 2..l.tokens.len() {
                frame.push(l.word(k, "a value label")?.to_string());
            }
            if vars.iter().any(|(n, _)| n == name) {
                return Err(l.err_at(0, format!("duplicate variable `{name}`")));
            }
            if frame.is_empty() {
                return Err(l.err_at(2, format!("variable `{name}` has an empty frame")));
            }
            let mut seen = frame.clone();
            seen.sort();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(l.err_at(2, format!("duplicate value `{}` in frame of `{name}`", w[0])));
            }
            vars.push((name.to_string(), frame));
        }
        let cat = VariableCatalog::new(vars).map_err(|e| self.lines[i].err(1, e.to_string()))?;
        self.model.catalog = Arc::new(cat.with_cap(self.cap));
        self.have_variables = true;
        Ok(())
    }

    /// Variable names starting at token `start`: either `{}` or names up to
    /// the next punctuation. Returns the domain and the order as written.
    fn written_vars(&self, i: usize, start: usize) -> PResult<(Vec<usize>, usize)> {
        let line = &self.lines[i];
        if line.text(start) == Some("{") {
            line.expect(start + 1, "}")?;
            return Ok((Vec::new(), start + 2));
        }
        let mut ids = Vec::new();
        let mut k = start;
        while let Some(t) = line.text(k) {
            if is_punct(t) || (k > start && matches!(t, "bpa" | "raw")) {
                break;
            }
            let id = self
                .model
                .catalog
                .id(t)
                .map_err(|_| line.err_at(k, format!("unknown variable `{t}`")))?;
            if ids.contains(&id) {
                return Err(line.err_at(k, format!("variable `{t}` listed twice")));
            }
            ids.push(id);
            k += 1;
        }
        Ok((ids, k))
    }

    fn var_list(&self, i: usize, start: usize) -> PResult<(Domain, usize)> {
        let (ids, next) = self.written_vars(i, start)?;
        Ok((Domain::from_ids(ids), next))
    }

    fn require_semiring(&self, i: usize) -> PResult<Semiring> {
        self.model
            .semiring
            .ok_or_else(|| self.lines[i].err_at(0, "a `semiring` line must precede valuations"))
    }

    fn fresh_name(&self, i: usize, name: &str, taken: bool) -> PResult<()> {
        if taken {
            Err(self.lines[i].err_at(1, format!("`{name}` is defined twice")))
        } else {
            Ok(())
        }
    }

    fn valuation(&mut self, i: usize) -> PResult<()> {
        let s = self.require_semiring(i)?;
        let line = &self.lines[i];
        let name = line.word(1, "a valuation name")?.to_string();
        self.fresh_name(i, &name, self.model.valuations.iter().any(|(n, _)| *n == name))?;
        line.expect(2, "on")?;
        let (written, next) = self.written_vars(i, 3)?;
        line.finish(next)?;
        let body = self.block(i)?;
        let mut values = Vec::new();
        let mut places = Vec::new();
        for &j in &body {
            let l = &self.lines[j];
            for k in 0..l.tokens.len() {
                values.push(parse_number(l, k)?);
                places.push((j, k));
            }
        }
        let cat = self.model.catalog.clone();
        let line = &self.lines[i];
        let d = Domain::from_ids(written.iter().copied());
        let n = cat.config_count(&d).map_err(|e| line.err_at(3, e.to_string()))?;
        if values.len() != n {
            return Err(line.err_at(
                0,
                format!("valuation `{name}` needs {n} values, found {}", values.len()),
            ));
        }
        for (k, &v) in values.iter().enumerate() {
            if let Err(e) = s.check_value(v) {
                let (j, t) = places[k];
                return Err(self.lines[j].err_at(t, e.to_string()));
            }
        }
        // reorder from the written layout to the canonical one
        let sizes: Vec<usize> = written.iter().map(|&v| cat.frame_size(v)).collect();
        let table = cat
            .enumerate_configs(&d)
            .map_err(|e| line.err_at(3, e.to_string()))?
            .iter()
            .map(|c| {
                let idx = written.iter().zip(&sizes).fold(0, |acc, (&v, &k)| {
                    acc * k + c.value_of(v).expect("variable of the domain")
                });
                values[idx]
            })
            .collect();
        let v = Valuation::new(s, cat, d, table).map_err(|e| line.err_at(0, e.to_string()))?;
        self.model.valuations.push((name, v));
        Ok(())
    }

    /// Parenthesized tuples of values in the written variable order.
    fn config_sets(&self, j: usize, start: usize, written: &[usize]) -> PResult<Vec<usize>> {
        let l = &self.lines[j];
        let cat = &self.model.catalog;
        let d = Domain::from_ids(written.iter().copied());
        let mut out = Vec::new();
        let mut k = start;
        while k < l.tokens.len() {
            l.expect(k, "(")?;
            k += 1;
            let mut vals = vec![0; written.len()];
            let mut count = 0;
            loop {
                match l.text(k) {
                    Some(")") => break,
                    Some(",") => k += 1,
                    Some(t) if !is_punct(t) => {
                        if count == written.len() {
                            return Err(l.err_at(k, "too many values in configuration"));
                        }
                        let var = written[count];
                        let pos = d.position(var).expect("written variable");
                        vals[pos] = cat.value_index(var, t).map_err(|e| l.err_at(k, e.to_string()))?;
                        count += 1;
                        k += 1;
                    }
                    _ => return Err(l.err_at(k, "expected a value or `)`")),
                }
            }
            if count != written.len() {
                return Err(l.err_at(k, format!("configuration needs {} values", written.len())));
            }
            k += 1;
            let idx = cat
                .config_index(&Configuration::new(d.clone(), vals))
                .map_err(|e| l.err_at(k - 1, e.to_string()))?;
            if out.contains(&idx) {
                return Err(l.err_at(k - 1, "configuration listed twice"));
            }
            out.push(idx);
        }
        Ok(out)
    }

    fn potential(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        let name = line.word(1, "a potential name")?.to_string();
        self.fresh_name(i, &name, self.model.potentials.iter().any(|(n, _)| *n == name))?;
        line.expect(2, "on")?;
        let (written, mut next) = self.written_vars(i, 3)?;
        let kind = match line.text(next) {
            Some("bpa") => {
                next += 1;
                Kind::Bpa
            }
            Some("raw") => {
                next += 1;
                Kind::Raw
            }
            _ => Kind::Raw,
        };
        line.finish(next)?;
        let body = self.block(i)?;
        let cat = self.model.catalog.clone();
        let d = Domain::from_ids(written.iter().copied());
        cat.config_count(&d).map_err(|e| self.lines[i].err_at(3, e.to_string()))?;
        let mut entries = Vec::new();
        for &j in &body {
            let l = &self.lines[j];
            let mass = parse_number(l, 0)?;
            if !mass.is_finite() || mass < 0.0 {
                return Err(l.err_at(0, "masses must be nonnegative"));
            }
            l.expect(1, ":")?;
            let configs = self.config_sets(j, 2, &written)?;
            let set = FocalSet::from_indices(&cat, d.clone(), configs).map_err(|e| l.err_at(2, e.to_string()))?;
            entries.push((set, mass));
        }
        let p = SetPotential::new(cat, d, entries, kind).map_err(|e| self.lines[i].err_at(0, e.to_string()))?;
        self.model.potentials.push((name, p));
        Ok(())
    }

    fn universe(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        if self.model.universe.is_some() {
            return Err(line.err_at(0, "universe declared twice"));
        }
        let labels = (1..line.tokens.len())
            .map(|k| line.word(k, "an element label"))
            .collect::<PResult<Vec<_>>>()?;
        let u = Universe::new(labels).map_err(|e| line.err_at(1, e.to_string()))?;
        self.model.universe = Some(u);
        Ok(())
    }

    fn partition(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        let u = self
            .model
            .universe
            .clone()
            .ok_or_else(|| line.err_at(0, "a `universe` line must precede partitions"))?;
        let name = line.word(1, "a partition name")?.to_string();
        self.fresh_name(i, &name, self.model.partitions.iter().any(|(n, _)| *n == name))?;
        line.expect(2, ":")?;
        let mut blocks = Vec::new();
        let mut k = 3;
        while k < line.tokens.len() {
            line.expect(k, "{")?;
            k += 1;
            let mut block = Vec::new();
            while line.text(k).is_some_and(|t| t != "}") {
                let t = line.word(k, "an element")?;
                block.push(u.element(t).map_err(|e| line.err_at(k, e.to_string()))?);
                k += 1;
            }
            line.expect(k, "}")?;
            k += 1;
            blocks.push(block);
        }
        let p = Partition::new(u, blocks).map_err(|e| line.err_at(3, e.to_string()))?;
        self.model.partitions.push((name, p));
        Ok(())
    }

    fn tree(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        if self.model.tree.is_some() {
            return Err(line.err_at(0, "tree declared twice"));
        }
        line.finish(1)?;
        let body = self.block(i)?;
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for &j in &body {
            let l = &self.lines[j];
            match l.text(0) {
                Some("node") => {
                    let k = parse_index(l, 1, "a node number")?;
                    if k != labels.len() + 1 {
                        return Err(l.err_at(1, format!("expected node {}", labels.len() + 1)));
                    }
                    l.expect(2, ":")?;
                    let (d, next) = self.var_list(j, 3)?;
                    l.finish(next)?;
                    labels.push(d);
                }
                Some("edge") => {
                    let a = parse_index(l, 1, "a node number")?;
                    let b = parse_index(l, 2, "a node number")?;
                    l.finish(3)?;
                    edges.push((a, b, j));
                }
                _ => return Err(l.err_at(0, "expected `node` or `edge`")),
            }
        }
        let n = labels.len();
        let mut zero_based = Vec::new();
        for (a, b, j) in edges {
            for (x, t) in [(a, 1), (b, 2)] {
                if x == 0 || x > n {
                    return Err(self.lines[j].err_at(t, format!("no node {x}")));
                }
            }
            zero_based.push((a - 1, b - 1));
        }
        let t = LabeledTree::new(labels, zero_based).map_err(|e| self.lines[i].err(1, e.to_string()))?;
        self.model.tree = Some(t);
        Ok(())
    }

    fn sequence(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        if self.model.sequence.is_some() {
            return Err(line.err_at(0, "sequence declared twice"));
        }
        line.finish(1)?;
        let body = self.block(i)?;
        if body.is_empty() {
            return Err(self.lines[i].err(1, "empty sequence"));
        }
        let mut domains = Vec::new();
        let mut b = Vec::new();
        for (pos, &j) in body.iter().enumerate() {
            let (d, next) = self.var_list(j, 0)?;
            let l = &self.lines[j];
            domains.push(d);
            match l.text(next) {
                Some("->") => {
                    let k = parse_index(l, next + 1, "a position")?;
                    l.finish(next + 2)?;
                    if pos + 1 == body.len() {
                        return Err(l.err_at(next, "the last domain has no b"));
                    }
                    if k <= pos + 1 || k > body.len() {
                        return Err(l.err_at(
                            next + 1,
                            format!("b({}) = {k} must lie in {}..{}", pos + 1, pos + 2, body.len()),
                        ));
                    }
                    b.push(Some(k - 1));
                }
                _ => {
                    l.finish(next)?;
                    if pos + 1 < body.len() {
                        b.push(None);
                    }
                }
            }
        }
        let seq = if b.iter().all(Option::is_none) {
            EliminationSequence::with_first_valid_b(domains.clone())
                .or_else(|_| EliminationSequence::new(domains.clone(), (1..domains.len()).collect()))
        } else if b.iter().all(Option::is_some) {
            EliminationSequence::new(domains, b.into_iter().map(Option::unwrap).collect())
        } else {
            return Err(self.lines[i].err(1, "give b for every position but the last, or for none"));
        };
        self.model.sequence = Some(seq.map_err(|e| self.lines[i].err(1, e.to_string()))?);
        Ok(())
    }

    fn hypothesis(&mut self, i: usize) -> PResult<()> {
        let line = &self.lines[i];
        let name = line.word(1, "a hypothesis name")?.to_string();
        self.fresh_name(i, &name, self.model.hypotheses.iter().any(|(n, _)| *n == name))?;
        line.expect(2, "on")?;
        let (written, next) = self.written_vars(i, 3)?;
        line.expect(next, ":")?;
        let configs = self.config_sets(i, next + 1, &written)?;
        let cat = self.model.catalog.clone();
        let d = Domain::from_ids(written.iter().copied());
        let set = FocalSet::from_indices(&cat, d, configs).map_err(|e| self.lines[i].err_at(3, e.to_string()))?;
        self.model.hypotheses.push((name, set));
        Ok(())
    }
}

/// Shortest text that parses back to exactly `x`.
fn exact_num(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:?}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

fn names(cat: &VariableCatalog, d: &Domain) -> String {
    if d.is_empty() {
        "{}".into()
    } else {
        d.vars().iter().map(|&v| cat.name(v)).collect::<Vec<_>>().join(" ")
    }
}

fn tuples(cat: &VariableCatalog, d: &Domain, configs: &[usize]) -> String {
    configs
        .iter()
        .map(|&i| {
            let c = cat.config_at(d, i).expect("index in range");
            let vals: Vec<&str> = c
                .domain
                .vars()
                .iter()
                .zip(&c.values)
                .map(|(&v, &x)| cat.frame(v)[x].as_str())
                .collect();
            format!("({})", vals.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl Model {
    /// Canonical text of the model; parsing it yields an equal model.
    pub fn emit(&self) -> String {
        let cat = &self.catalog;
        let mut out = String::new();
        if let Some(s) = &self.semiring {
            writeln!(out, "semiring {}", s.id()).unwrap();
        }
        if !cat.is_empty() {
            out.push_str("variables\n");
            for v in cat.variables() {
                writeln!(out, "  {}: {}", v.name, v.frame.join(" ")).unwrap();
            }
            out.push_str("end\n");
        }
        for (name, v) in &self.valuations {
            writeln!(out, "valuation {name} on {}", names(cat, v.domain())).unwrap();
            let row = v.domain().vars().last().map_or(1, |&x| cat.frame_size(x));
            for chunk in v.table().chunks(row) {
                let vals: Vec<String> = chunk.iter().map(|&x| exact_num(x)).collect();
                writeln!(out, "  {}", vals.join(" ")).unwrap();
            }
            out.push_str("end\n");
        }
        for (name, p) in &self.potentials {
            let kind = if p.kind() == Kind::Bpa { " bpa" } else { "" };
            writeln!(out, "potential {name} on {}{kind}", names(cat, p.domain())).unwrap();
            for (set, m) in p.focal_sets() {
                let t = tuples(cat, p.domain(), set.indices());
                writeln!(out, "  {} :{}{t}", exact_num(m), if t.is_empty() { "" } else { " " }).unwrap();
            }
            out.push_str("end\n");
        }
        if let Some(u) = &self.universe {
            writeln!(out, "universe {}", u.labels().join(" ")).unwrap();
        }
        for (name, p) in &self.partitions {
            let blocks: Vec<String> = p
                .blocks()
                .iter()
                .map(|b| {
                    let ls: Vec<&str> = b.iter().map(|&e| p.universe().label(e)).collect();
                    format!("{{{}}}", ls.join(" "))
                })
                .collect();
            writeln!(out, "partition {name} : {}", blocks.join(" ")).unwrap();
        }
        if let Some(t) = &self.tree {
            out.push_str("tree\n");
            for (k, d) in t.labels().iter().enumerate() {
                writeln!(out, "  node {} : {}", k + 1, names(cat, d)).unwrap();
            }
            for &(a, b) in t.edges() {
                writeln!(out, "  edge {} {}", a + 1, b + 1).unwrap();
            }
            out.push_str("end\n");
        }
        if let Some(s) = &self.sequence {
            out.push_str("sequence\n");
            for (i, d) in s.domains().iter().enumerate() {
                match s.b().get(i) {
                    Some(b) => writeln!(out, "  {} -> {}", names(cat, d), b + 1).unwrap(),
                    None => writeln!(out, "  {}", names(cat, d)).unwrap(),
                }
            }
            out.push_str("end\n");
        }
        for q in &self.queries {
            writeln!(out, "query {}", names(cat, q)).unwrap();
        }
        for (name, h) in &self.hypotheses {
            writeln!(
                out,
                "hypothesis {name} on {} : {}",
                names(cat, h.domain()),
                tuples(cat, h.domain(), h.indices())
            )
            .unwrap();
        }
        out
    }

    pub fn valuation_domains(&self) -> Vec<Domain> {
        self.valuations.iter().map(|(_, v)| v.domain().clone()).collect()
    }

    pub fn partition(&self, name: &str) -> Option<&Partition> {
        self.partitions.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// Element labels of a set, for reports.
    pub fn element_labels(&self, s: &ElementSet) -> Vec<String> {
        let u = self.universe.as_ref().expect("universe");
        s.iter().map(|&e| u.label(e).to_string()).collect()
    }
}
