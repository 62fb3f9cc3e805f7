use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use ldpart::dh::ld_partition_dh_traced;
use ldpart::format::write_edge_list;
use ldpart::mop::ld_partition_mop_traced;
use ldpart::oracle::{gamma_ld, OracleCaps};
use ldpart::{
    check_ld_partition, check_preconditions, ld_partition, CheckReport, Graph, GraphClass,
    InternalAssertionFailure, LdError, LdPartition, VertexSet,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::input::Instance;

pub const SCHEMA: u32 = 1;

/// Order in which `--class auto` tries the constructors.
pub const AUTO_ORDER: [GraphClass; 4] = [GraphClass::Mop, GraphClass::Split, GraphClass::Cobipartite, GraphClass::Dh];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassChoice {
    Auto,
    Class(GraphClass),
}

impl FromStr for ClassChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(ClassChoice::Auto);
        }
        s.parse().map(ClassChoice::Class)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputId {
    pub source: String,
    pub index: usize,
    /// SHA-256 of the graph's canonical edge list.
    pub sha256: String,
    pub n: usize,
    pub m: usize,
}

pub fn graph_hash(g: &Graph) -> String {
    let digest = Sha256::digest(write_edge_list(g).as_bytes());
    let mut hex = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(hex, "{b:02x}");
    }
    hex
}

impl InputId {
    pub fn of(inst: &Instance) -> Self {
        Self {
            source: inst.source.clone(),
            index: inst.index,
            sha256: graph_hash(&inst.graph),
            n: inst.graph.n(),
            m: inst.graph.m(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Classes {
    pub dh: bool,
    pub mop: bool,
    pub split: bool,
    pub cobipartite: bool,
    pub twin_free: bool,
    pub isolate_free: bool,
}

impl Classes {
    pub fn of(g: &Graph) -> Self {
        Self {
            dh: ldpart::is_member(g, GraphClass::Dh),
            mop: ldpart::is_member(g, GraphClass::Mop),
            split: ldpart::is_member(g, GraphClass::Split),
            cobipartite: ldpart::is_member(g, GraphClass::Cobipartite),
            twin_free: g.is_twin_free(),
            isolate_free: g.is_isolate_free(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// The input is outside the requested class or violates its conditions.
    Precondition,
    VerificationFailed,
    InternalAssertion,
    Error,
}

impl Status {
    pub fn is_failure(self) -> bool {
        matches!(self, Status::VerificationFailed | Status::InternalAssertion)
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum OracleCheck {
    Done { gamma_ld: usize, witness: VertexSet, min_side: usize, holds: bool },
    Skipped { skipped: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: &'static str,
    pub input: InputId,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Classes>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<GraphClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<LdPartition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<InternalAssertionFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

impl RunReport {
    pub fn new(command: &'static str, inst: &Instance) -> Self {
        Self {
            schema: SCHEMA,
            command,
            input: InputId::of(inst),
            status: Status::Ok,
            classes: None,
            algorithm: None,
            partition: None,
            verdict: None,
            oracle: None,
            trace: None,
            error: None,
            failure: None,
            timings_ms: None,
        }
    }

    pub fn fail_with(&mut self, e: LdError) {
        self.status = if e.is_precondition() { Status::Precondition } else { Status::Error };
        if let LdError::InternalAssertion(f) = &e {
            self.status = Status::InternalAssertion;
            self.failure = Some((**f).clone());
        }
        self.error = Some(e.to_string());
    }

    pub fn min_side_ratio(&self) -> Option<f64> {
        let p = self.partition.as_ref()?;
        (self.input.n > 0).then(|| p.min_side_len() as f64 / self.input.n as f64)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PartitionOptions {
    pub class: ClassChoice,
    pub verify: bool,
    pub caps: OracleCaps,
    pub timings: bool,
}

/// First class in [`AUTO_ORDER`] whose constructor accepts `g`.
pub fn auto_class(g: &Graph) -> Result<GraphClass, String> {
    let mut reasons = Vec::new();
    for class in AUTO_ORDER {
        match check_preconditions(g, class) {
            Ok(()) => return Ok(class),
            Err(e) => reasons.push(format!("{class}: {e}")),
        }
    }
    Err(format!("no constructor applies ({})", reasons.join("; ")))
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn construct(g: &Graph, class: GraphClass) -> Result<(LdPartition, Option<serde_json::Value>), LdError> {
    match class {
        GraphClass::Dh => ld_partition_dh_traced(g).map(|(p, t)| (p, serde_json::to_value(t).ok())),
        GraphClass::Mop => ld_partition_mop_traced(g).map(|(p, t)| (p, serde_json::to_value(t).ok())),
        _ => ld_partition(g, class).map(|p| (p, None)),
    }
}

/// Classifies, constructs, verifies and (within the gamma cap) cross-checks
/// against the exact minimum.
pub fn run_partition(inst: &Instance, opts: &PartitionOptions) -> RunReport {
    let g = &inst.graph;
    let mut r = RunReport::new("partition", inst);
    let mut timings = BTreeMap::new();
    let class = match opts.class {
        ClassChoice::Class(c) => c,
        ClassChoice::Auto => {
            r.classes = Some(Classes::of(g));
            match auto_class(g) {
                Ok(c) => c,
                Err(msg) => {
                    r.status = Status::Precondition;
                    r.error = Some(msg);
                    return r;
                }
            }
        }
    };
    r.algorithm = Some(class);
    let t = Instant::now();
    let built = construct(g, class);
    timings.insert("construct", ms(t));
    match built {
        Ok((p, trace)) => {
            r.partition = Some(p);
            r.trace = trace;
        }
        Err(e) => {
            r.fail_with(e);
            if opts.timings {
                r.timings_ms = Some(timings);
            }
            return r;
        }
    }
    if opts.verify {
        let p = r.partition.as_ref().expect("constructed");
        let t = Instant::now();
        let verdict = check_ld_partition(g, p).expect("partition uses vertices of g");
        timings.insert("verify", ms(t));
        if !verdict.passed() {
            r.status = Status::VerificationFailed;
        }
        r.verdict = Some(verdict);
        let t = Instant::now();
        r.oracle = Some(match gamma_ld(g, opts.caps.gamma) {
            Ok(res) => {
                let gamma = res.gamma_ld.expect("gamma_ld always reports a value");
                let min_side = p.min_side_len();
                let holds = gamma <= min_side;
                if !holds {
                    r.status = Status::VerificationFailed;
                }
                OracleCheck::Done { gamma_ld: gamma, witness: res.witness_set.unwrap_or_default(), min_side, holds }
            }
            Err(e) => OracleCheck::Skipped { skipped: e.to_string() },
        });
        timings.insert("oracle", ms(t));
    }
    if opts.timings {
        r.timings_ms = Some(timings);
    }
    r
}

/// Graphviz rendering with one fill colour per side.
pub fn to_dot(g: &Graph, p: &LdPartition) -> String {
    let mut s = String::from("graph ldpartition {\n  node [style=filled];\n");
    for v in g.vertices() {
        let (side, colour) = if p.d1.contains(v) { (1, "lightblue") } else { (2, "salmon") };
        let _ = writeln!(s, "  {v} [fillcolor={colour}, side={side}];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BatchSummary {
    pub schema: u32,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub internal_assertions: usize,
    pub precondition_rejected: usize,
    pub errors: usize,
    pub by_algorithm: BTreeMap<String, usize>,
    /// Largest `min(|D1|, |D2|) / n` over the constructed partitions.
    pub max_min_side_ratio: Option<f64>,
    pub counterexamples: Vec<String>,
}

impl BatchSummary {
    pub fn from_reports(reports: &[RunReport]) -> Self {
        let mut s = BatchSummary { schema: SCHEMA, instances: reports.len(), ..Default::default() };
        for r in reports {
            match r.status {
                Status::Ok => s.passed += 1,
                Status::Precondition => s.precondition_rejected += 1,
                Status::VerificationFailed => s.failed += 1,
                Status::InternalAssertion => {
                    s.failed += 1;
                    s.internal_assertions += 1;
                }
                Status::Error => s.errors += 1,
            }
            if let (Status::Ok, Some(c)) = (r.status, r.algorithm) {
                *s.by_algorithm.entry(c.to_string()).or_default() += 1;
            }
            if let Some(x) = r.min_side_ratio() {
                s.max_min_side_ratio = Some(s.max_min_side_ratio.map_or(x, |m: f64| m.max(x)));
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }
}
