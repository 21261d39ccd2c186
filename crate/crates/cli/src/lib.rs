//! Batch front end: parse a model, run one command, print a deterministic report.

pub mod model;

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use infalg::belief::{belief_to_mass, commonality_to_mass, FocalSet, SetPotential, DEFAULT_SUBSET_CAP};
use infalg::domain::DEFAULT_CONFIG_CAP;
use infalg::partition::{check_qseparoid, lattice_indep};
use infalg::treecomp::{
    build_covering_join_tree, collect, distribute, markov_direct, naive_solve, select_root, Heuristic,
    LabeledTree, LocalAlgebra, MessageForm, ValuationAlgebra, DIRECT_MARKOV_LIMIT,
};
use infalg::{
    check_semiring_axioms, check_valuation_axioms, cond_indep_partitions, fmt_num, CheckReport, Domain, Partition, Semiring,
    Tolerance, Valuation, VariableCatalog,
};

pub use model::{parse, parse_with_cap, Model, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Engine(#[from] infalg::Error),
}

impl CliError {
    /// 2 for usage and input problems, 3 for missing algebraic capabilities.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.is_capability() => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "infalg", version, about = "Local computation over semiring valuations and belief potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for sampling and elimination tie-breaks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of configurations of any domain.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Comparator tolerance as REL,ABS.
    #[arg(long, global = true, value_parser = parse_tolerance)]
    pub tolerance: Option<Tolerance>,
    /// Append the elapsed time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

fn parse_tolerance(s: &str) -> std::result::Result<Tolerance, String> {
    let (rel, abs) = s.split_once(',').ok_or("expected REL,ABS")?;
    let rel: f64 = rel.trim().parse().map_err(|_| format!("bad relative tolerance `{rel}`"))?;
    let abs: f64 = abs.trim().parse().map_err(|_| format!("bad absolute tolerance `{abs}`"))?;
    if !(rel >= 0.0 && abs >= 0.0) {
        return Err("tolerances must be nonnegative".into());
    }
    Ok(Tolerance::new(rel, abs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Messages {
    Auto,
    Transport,
    Projection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckWhat {
    Semiring,
    ValuationAxioms,
    Qseparoid,
    Tree,
    Sequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvidenceOp {
    Combine,
    Support,
    Plausibility,
    Moebius,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Answer the model's queries by message passing on a join tree.
    Solve {
        /// Model file; standard input when absent or `-`.
        input: Option<PathBuf>,
        /// Extra query domain, e.g. "X Y"; repeatable. `{}` is the empty domain.
        #[arg(long = "query")]
        queries: Vec<String>,
        /// Collect towards this node (numbered from 1).
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, default_value_t = Heuristic::MinDegree)]
        heuristic: Heuristic,
        /// Compare every answer with combine-then-marginalize.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Messages::Auto)]
        messages: Messages,
    },
    /// Run an axiom or structure check; exits 1 on any failure.
    Check {
        #[arg(value_enum)]
        what: CheckWhat,
        /// Model file, or a semiring identifier for the axiom checks.
        target: Option<String>,
        /// Sample count (axioms) or exhaustive-enumeration limit (qseparoid).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Combine belief potentials and query hypotheses.
    Evidence {
        #[arg(value_enum)]
        op: EvidenceOp,
        input: Option<PathBuf>,
        /// Restrict to these hypotheses; repeatable.
        #[arg(long = "hypothesis")]
        hypotheses: Vec<String>,
    },
    /// Print the model in canonical form.
    Emit { input: Option<PathBuf> },
}

/// A finished report; `failed` marks a failing check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }
}

struct Input {
    text: String,
    digest: String,
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<Input> {
    let bytes = match path {
        Some(p) if p != Path::new("-") => std::fs::read(p).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        })?,
        _ => {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf).map_err(|e| CliError::Io {
                path: "standard input".into(),
                message: e.to_string(),
            })?;
            buf
        }
    };
    let digest = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage("input is not UTF-8".into()))?;
    Ok(Input { text, digest })
}

fn load(path: Option<&Path>, stdin: &mut dyn Read, common: &Common) -> Result<(Model, String)> {
    let input = read_input(path, stdin)?;
    let model = parse_with_cap(&input.text, common.cap.unwrap_or(DEFAULT_CONFIG_CAP))?;
    Ok((model, input.digest))
}

/// Runs one command. Errors carry their exit code via [`CliError::exit_code`].
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    let start = Instant::now();
    let c = &cli.common;
    let mut out = match &cli.command {
        Command::Solve {
            input,
            queries,
            root,
            heuristic,
            oracle,
            messages,
        } => {
            let (model, digest) = load(input.as_deref(), stdin, c)?;
            let opts = SolveOptions {
                queries: queries.clone(),
                root: *root,
                heuristic: *heuristic,
                oracle: *oracle,
                messages: *messages,
            };
            solve(&model, &digest, c, &opts)?
        }
        Command::Check { what, target, samples } => check(*what, target.as_deref(), *samples, stdin, c)?,
        Command::Evidence { op, input, hypotheses } => {
            let (model, digest) = load(input.as_deref(), stdin, c)?;
            evidence(&model, &digest, *op, hypotheses, c)?
        }
        Command::Emit { input } => {
            let (model, _) = load(input.as_deref(), stdin, c)?;
            return Ok(Outcome {
                report: model.emit(),
                failed: false,
            });
        }
    };
    if c.timing {
        writeln!(out.report, "elapsed: {} ms", start.elapsed().as_millis()).unwrap();
    }
    Ok(out)
}

fn header(command: &str, digest: Option<&str>) -> String {
    let mut s = format!("infalg {}\ncommand: {command}\n", env!("CARGO_PKG_VERSION"));
    match digest {
        Some(d) => writeln!(s, "input: sha256:{d}").unwrap(),
        None => s.push_str("input: none\n"),
    }
    s
}

fn with_tolerance(s: Semiring, c: &Common) -> Semiring {
    match c.tolerance {
        Some(t) => s.with_tolerance(t),
        None => s,
    }
}

fn parse_query(cat: &VariableCatalog, q: &str) -> Result<Domain> {
    let names: Vec<&str> = q.split(|ch: char| ch.is_whitespace() || ch == ',').filter(|n| !n.is_empty()).collect();
    if names == ["{}"] {
        return Ok(Domain::empty());
    }
    Ok(cat.domain(names)?)
}

pub struct SolveOptions {
    pub queries: Vec<String>,
    pub root: Option<usize>,
    pub heuristic: Heuristic,
    pub oracle: bool,
    pub messages: Messages,
}

fn write_table(out: &mut String, v: &Valuation) {
    let cat = v.catalog();
    for (c, x) in cat.enumerate_configs(v.domain()).expect("finite domain").iter().zip(v.table()) {
        writeln!(out, "  {} {}", cat.display_config(c), fmt_num(*x)).unwrap();
    }
}

fn write_tree(out: &mut String, cat: &VariableCatalog, tree: &LabeledTree, names: &[&str]) {
    for v in 0..tree.len() {
        let fs: Vec<&str> = tree.factors_at(v).map(|i| names[i]).collect();
        let assigned = if fs.is_empty() { String::new() } else { format!(" <- {}", fs.join(" ")) };
        writeln!(out, "  node {} {}{assigned}", v + 1, cat.display(tree.label(v))).unwrap();
    }
    for &(a, b) in tree.edges() {
        writeln!(out, "  edge {} {}", a + 1, b + 1).unwrap();
    }
}

pub fn solve(model: &Model, digest: &str, c: &Common, opts: &SolveOptions) -> Result<Outcome> {
    let s = with_tolerance(
        model
            .semiring
            .ok_or_else(|| CliError::Usage("solve needs a `semiring` line".into()))?,
        c,
    );
    let cat = model.catalog.clone();
    let mut queries = model.queries.clone();
    for q in &opts.queries {
        queries.push(parse_query(&cat, q)?);
    }
    if queries.is_empty() {
        queries.push(Domain::empty());
    }
    let factors: Vec<Valuation> = model.valuations.iter().map(|(_, v)| v.clone()).collect();
    let names: Vec<&str> = model.valuations.iter().map(|(n, _)| n.as_str()).collect();
    let domains = model.valuation_domains();
    let (tree, origin) = match &model.tree {
        Some(t) => (t.clone().assign_covering(&domains)?, "from model".to_string()),
        None => {
            let mut all = domains.clone();
            all.extend(queries.iter().cloned());
            let built = build_covering_join_tree(&all, opts.heuristic, c.seed)?;
            let assignment = built.assignment()[..domains.len()].to_vec();
            let built = built.with_assignment(assignment, &domains)?;
            (built, format!("built with {} seed {}", opts.heuristic, c.seed))
        }
    };
    let root = match opts.root {
        Some(r) if r == 0 || r > tree.len() => {
            return Err(CliError::Usage(format!("--root {r} is not a node of the {}-node tree", tree.len())))
        }
        Some(r) => r - 1,
        None => select_root(&tree, &queries[0]).ok_or_else(|| {
            CliError::Usage(format!("no tree node covers the query {}", cat.display(&queries[0])))
        })?,
    };
    let alg = ValuationAlgebra::new(s, cat.clone());
    let form = match opts.messages {
        Messages::Auto => MessageForm::Auto,
        Messages::Transport => MessageForm::Transport,
        Messages::Projection => MessageForm::Projection,
    };

    let mut out = header("solve", Some(digest));
    writeln!(out, "semiring: {}", s.id()).unwrap();
    writeln!(out, "factors: {}", factors.len()).unwrap();
    writeln!(out, "tree: {} nodes, {origin}", tree.len()).unwrap();
    write_tree(&mut out, &cat, &tree, &names);

    let (at_root, mut store) = collect(&alg, &tree, &factors, root, form)?;
    let form_name = match store.form {
        MessageForm::Transport => "transport",
        _ => "projection",
    };
    writeln!(out, "messages: {form_name}, collected at node {}", root + 1).unwrap();
    let single = queries.len() == 1 && queries[0].is_subset(tree.label(root));
    let marginals = if single {
        None
    } else {
        Some(distribute(&alg, &tree, &factors, &mut store, root)?)
    };
    let tol = s.tolerance();
    let mut failed = false;
    for q in &queries {
        let (node, local) = match &marginals {
            None => (root, &at_root),
            Some(m) => {
                let v = select_root(&tree, q).ok_or_else(|| {
                    CliError::Usage(format!("no tree node covers the query {}", cat.display(q)))
                })?;
                (v, &m[v])
            }
        };
        let answer = alg.project(local, q)?;
        writeln!(out, "query {} at node {}", cat.display(q), node + 1).unwrap();
        write_table(&mut out, &answer);
        if opts.oracle {
            let naive = naive_solve(&alg, &factors, q)?;
            let ok = answer.table().iter().zip(naive.table()).all(|(&a, &b)| tol.eq(a, b));
            failed |= !ok;
            writeln!(
                out,
                "  oracle: max deviation {} ({})",
                fmt_num(answer.max_deviation(&naive)),
                if ok { "pass" } else { "FAIL" }
            )
            .unwrap();
        }
    }
    Ok(Outcome { report: out, failed })
}

fn check(
    what: CheckWhat,
    target: Option<&str>,
    samples: Option<usize>,
    stdin: &mut dyn Read,
    c: &Common,
) -> Result<Outcome> {
    let command = match what {
        CheckWhat::Semiring => "check semiring",
        CheckWhat::ValuationAxioms => "check valuation-axioms",
        CheckWhat::Qseparoid => "check qseparoid",
        CheckWhat::Tree => "check tree",
        CheckWhat::Sequence => "check sequence",
    };
    if matches!(what, CheckWhat::Semiring | CheckWhat::ValuationAxioms) {
        let (s, digest) = match target {
            Some(t) if !Path::new(t).exists() && t != "-" => {
                let s = Semiring::parse(t)
                    .map_err(|_| CliError::Usage(format!("`{t}` is neither a file nor a semiring")))?;
                (s, None)
            }
            _ => {
                let (model, digest) = load(target.map(Path::new), stdin, c)?;
                let s = model
                    .semiring
                    .ok_or_else(|| CliError::Usage("the model declares no semiring".into()))?;
                (s, Some(digest))
            }
        };
        let s = with_tolerance(s, c);
        let report = if what == CheckWhat::Semiring {
            check_semiring_axioms(&s, samples.unwrap_or(10_000), c.seed)
        } else {
            check_valuation_axioms(&s, samples.unwrap_or(200), c.seed)
        };
        return Ok(finish(header(command, digest.as_deref()), report, String::new()));
    }
    let (model, digest) = load(target.map(Path::new), stdin, c)?;
    let head = header(command, Some(&digest));
    match what {
        CheckWhat::Qseparoid => check_partitions(&model, head, samples, c),
        CheckWhat::Tree => check_tree(&model, head),
        _ => check_sequence(&model, head),
    }
}

fn finish(mut head: String, report: CheckReport, extra: String) -> Outcome {
    head.push_str(&extra);
    writeln!(head, "{report}").unwrap();
    Outcome {
        report: head,
        failed: !report.passed(),
    }
}

/// Closes the given partitions under join, keeping first-seen order.
fn join_closure(ps: &[Partition]) -> Result<Vec<Partition>> {
    let mut set: Vec<Partition> = Vec::new();
    for p in ps {
        if !set.contains(p) {
            set.push(p.clone());
        }
    }
    let mut i = 0;
    while i < set.len() {
        for j in 0..=i {
            let m = set[i].join(&set[j])?;
            if !set.contains(&m) {
                set.push(m);
            }
        }
        i += 1;
    }
    Ok(set)
}

const FULL_LATTICE_LIMIT: usize = 8;

fn check_partitions(model: &Model, head: String, samples: Option<usize>, c: &Common) -> Result<Outcome> {
    let u = model
        .universe
        .clone()
        .ok_or_else(|| CliError::Usage("check qseparoid needs a `universe` line".into()))?;
    let mut extra = String::new();
    let set = if model.partitions.is_empty() {
        if u.len() > FULL_LATTICE_LIMIT {
            return Err(CliError::Usage(format!(
                "the full lattice is only enumerated for universes of at most {FULL_LATTICE_LIMIT} elements"
            )));
        }
        let all = Partition::all(u.clone());
        writeln!(extra, "set: full partition lattice, {} partitions", all.len()).unwrap();
        all
    } else {
        let declared: Vec<Partition> = model.partitions.iter().map(|(_, p)| p.clone()).collect();
        let closed = join_closure(&declared)?;
        writeln!(
            extra,
            "set: join closure of {} declared partitions, {} partitions",
            declared.len(),
            closed.len()
        )
        .unwrap();
        for (i, (a, pa)) in model.partitions.iter().enumerate() {
            for (b, pb) in &model.partitions[i + 1..] {
                let yn = |b: bool| if b { "yes" } else { "no" };
                let bottom = Partition::trivial(u.clone());
                writeln!(extra, "commutes {a} {b}: {}", yn(pa.commutes(pb)?)).unwrap();
                writeln!(
                    extra,
                    "independent {a} {b} given trivial: partition {}, lattice {}",
                    yn(cond_indep_partitions(pa, pb, &bottom)?),
                    yn(lattice_indep(pa, pb, &bottom)?)
                )
                .unwrap();
            }
        }
        closed
    };
    let limit = samples.map_or(1 << 21, |s| s as u64);
    let report = check_qseparoid(&set, limit, c.seed)?;
    Ok(finish(head, report, extra))
}

fn check_tree(model: &Model, head: String) -> Result<Outcome> {
    let Some(tree) = &model.tree else {
        return Err(CliError::Usage("the model has no `tree` stanza".into()));
    };
    let cat = &model.catalog;
    let mut r = CheckReport::new("tree", None);
    r.exhaustive = true;
    let violation = tree.join_tree_violation();
    r.check("join tree", violation.is_none(), || {
        let (v, u) = violation.expect("violation");
        let shared = tree.label(v).intersection(tree.label(u));
        let w = tree
            .path(v, u)
            .into_iter()
            .find(|&w| !shared.is_subset(tree.label(w)))
            .expect("blocking node");
        format!(
            "nodes {} and {} share {} but node {} has {}",
            v + 1,
            u + 1,
            cat.display(&shared),
            w + 1,
            cat.display(tree.label(w))
        )
    });
    if tree.len() <= DIRECT_MARKOV_LIMIT {
        let ok = markov_direct(tree);
        r.check("markov (direct)", ok, || "some node separates no neighbour split".into());
    } else {
        r.not_applicable("markov (direct)", format!("more than {DIRECT_MARKOV_LIMIT} nodes"));
    }
    let mut factors: Vec<(&str, &Domain)> = model.valuations.iter().map(|(n, v)| (n.as_str(), v.domain())).collect();
    factors.extend(model.potentials.iter().map(|(n, p)| (n.as_str(), p.domain())));
    if factors.is_empty() {
        r.not_applicable("factor coverage", "the model has no factors");
    }
    for (name, d) in factors {
        r.check("factor coverage", tree.covering_node(d).is_some(), || {
            format!("no node covers {name} on {}", cat.display(d))
        });
    }
    Ok(finish(head, r, String::new()))
}

fn check_sequence(model: &Model, head: String) -> Result<Outcome> {
    let seq = model
        .sequence
        .as_ref()
        .ok_or_else(|| CliError::Usage("the model has no `sequence` stanza".into()))?;
    let cat = &model.catalog;
    let mut r = CheckReport::new("sequence", None);
    r.exhaustive = true;
    r.declare("hypertree condition");
    for (i, &b) in seq.b().iter().enumerate() {
        let need = seq.domain(i).intersection(&seq.tail(i));
        r.check("hypertree condition", need.is_subset(seq.domain(b)), || {
            format!(
                "position {}: {} is shared with later domains but x_{} is {}",
                i + 1,
                cat.display(&need),
                b + 1,
                cat.display(seq.domain(b))
            )
        });
    }
    match seq.to_join_tree() {
        Ok(t) => r.check("join tree", t.is_join_tree(), || "the induced tree is not a join tree".into()),
        Err(_) => r.not_applicable("join tree", "the hypertree condition fails"),
    }
    Ok(finish(head, r, String::new()))
}

fn combined(model: &Model) -> Result<SetPotential> {
    let mut ps = model.potentials.iter().map(|(_, p)| p);
    let first = ps
        .next()
        .ok_or_else(|| CliError::Usage("the model has no `potential` stanzas".into()))?;
    let mut acc = first.clone();
    for p in ps {
        acc = acc.combine(p)?;
    }
    Ok(acc)
}

fn write_masses(out: &mut String, p: &SetPotential) {
    for line in p.render().lines() {
        writeln!(out, "  {line}").unwrap();
    }
}

fn evidence(model: &Model, digest: &str, op: EvidenceOp, only: &[String], c: &Common) -> Result<Outcome> {
    let name = match op {
        EvidenceOp::Combine => "combine",
        EvidenceOp::Support => "support",
        EvidenceOp::Plausibility => "plausibility",
        EvidenceOp::Moebius => "moebius",
    };
    let mut out = header(&format!("evidence {name}"), Some(digest));
    let tol = c.tolerance.unwrap_or_default();
    let cat = &model.catalog;
    let names: Vec<&str> = model.potentials.iter().map(|(n, _)| n.as_str()).collect();
    let raw = combined(model)?.with_tolerance(tol);
    let mut failed = false;
    match op {
        EvidenceOp::Combine => {
            writeln!(out, "combine {} on {}", names.join(" "), cat.display(raw.domain())).unwrap();
            out.push_str("raw:\n");
            write_masses(&mut out, &raw);
            let norm = raw.normalize()?;
            writeln!(out, "normalized (conflict {}):", fmt_num(norm.conflict())).unwrap();
            write_masses(&mut out, &norm);
        }
        EvidenceOp::Support | EvidenceOp::Plausibility => {
            let hs: Vec<&(String, FocalSet)> = model
                .hypotheses
                .iter()
                .filter(|(n, _)| only.is_empty() || only.contains(n))
                .collect();
            if let Some(missing) = only.iter().find(|n| !model.hypotheses.iter().any(|(m, _)| m == *n)) {
                return Err(CliError::Usage(format!("no hypothesis named `{missing}`")));
            }
            if hs.is_empty() {
                return Err(CliError::Usage("the model has no `hypothesis` lines".into()));
            }
            writeln!(out, "evidence {} on {}", names.join(" "), cat.display(raw.domain())).unwrap();
            for (hname, h) in hs {
                let u = raw.domain().union(h.domain());
                let ext = raw.transport(&u)?;
                let hu = h.cylinder(cat, &u)?;
                let (qsp, sp) = ext.degree_of_support(&hu)?;
                let pl = ext.degree_of_plausibility(&hu)?;
                writeln!(out, "hypothesis {hname} = {}", h.render(cat)).unwrap();
                if op == EvidenceOp::Support {
                    writeln!(out, "  qsp {}", fmt_num(qsp)).unwrap();
                    writeln!(out, "  sp {}", fmt_num(sp)).unwrap();
                    writeln!(out, "  pl {}", fmt_num(pl)).unwrap();
                } else {
                    let sp_not = ext.degree_of_support(&hu.complement(cat)?)?.1;
                    let ok = tol.eq(pl, 1.0 - sp_not);
                    failed |= !ok;
                    writeln!(out, "  pl {}", fmt_num(pl)).unwrap();
                    writeln!(
                        out,
                        "  1 - sp(not H) {} ({})",
                        fmt_num(1.0 - sp_not),
                        if ok { "agree" } else { "DISAGREE" }
                    )
                    .unwrap();
                }
            }
        }
        EvidenceOp::Moebius => {
            let cap = DEFAULT_SUBSET_CAP;
            for (pname, p) in &model.potentials {
                let p = p.clone().with_tolerance(tol);
                let b = p.belief_table(cap)?;
                let q = p.commonality_table(cap)?;
                let from_b = belief_to_mass(cat.clone(), &b)?;
                let from_q = commonality_to_mass(cat.clone(), &q)?;
                writeln!(out, "potential {pname} on {}", cat.display(p.domain())).unwrap();
                if b.size <= MOEBIUS_PRINT_LIMIT {
                    writeln!(out, "  {:<28} {:>14} {:>14} {:>14}", "subset", "m", "b", "q").unwrap();
                    for mask in 0..1usize << b.size {
                        let configs = (0..b.size).filter(|i| mask >> i & 1 == 1).collect();
                        let s = FocalSet::from_indices(cat, p.domain().clone(), configs)?;
                        writeln!(
                            out,
                            "  {:<28} {:>14} {:>14} {:>14}",
                            s.render(cat),
                            fmt_num(p.mass(&s)),
                            fmt_num(b.get(&s)),
                            fmt_num(q.get(&s))
                        )
                        .unwrap();
                    }
                }
                for (label, back) in [("m -> b -> m", &from_b), ("m -> q -> m", &from_q)] {
                    let dev = mass_deviation(&p, back);
                    let ok = back.approx_eq(&p);
                    failed |= !ok;
                    writeln!(
                        out,
                        "  {label}: {} (max deviation {})",
                        if ok { "identity" } else { "MISMATCH" },
                        fmt_num(dev)
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(Outcome { report: out, failed })
}

const MOEBIUS_PRINT_LIMIT: usize = 5;

fn mass_deviation(a: &SetPotential, b: &SetPotential) -> f64 {
    let mut dev: f64 = 0.0;
    for (s, _) in a.focal_sets().chain(b.focal_sets()) {
        dev = dev.max((a.mass(&s) - b.mass(&s)).abs());
    }
    dev
}
