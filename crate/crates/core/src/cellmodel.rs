//! Symbolic cell descriptions: indexed roots, per-level symbolic intervals,
//! the cell itself with its projection trace and counters, plus evaluation
//! and membership testing at rational points, and the JSON document format.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, parse_rat, Rat};
use crate::poly::{parse_poly, Polynomial, Var, VarOrder};
use crate::realroots::{isolate, AlgebraicValue};

/// The partial function mapping a prefix point to the `index`-th real root of
/// `poly` in its main variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexedRoot {
    pub poly: Polynomial,
    pub index: u32,
}

impl IndexedRoot {
    pub fn new(poly: Polynomial, index: u32) -> IndexedRoot {
        debug_assert!(index >= 1);
        IndexedRoot { poly, index }
    }

    pub fn level(&self) -> usize {
        self.poly.level()
    }
}

/// Evaluates an indexed root at a rational prefix of length `level - 1`.
/// Returns `None` when the substituted polynomial is identically zero or has
/// fewer real roots than the index.
pub fn eval_indexed_root(ir: &IndexedRoot, prefix: &[Rat]) -> Option<AlgebraicValue> {
    debug_assert_eq!(prefix.len(), ir.level().saturating_sub(1));
    let substituted = ir.poly.eval_prefix(prefix);
    if substituted.is_zero() {
        return None;
    }
    if substituted.is_constant() {
        return None;
    }
    let roots = isolate(&substituted).ok()?;
    roots.get(ir.index).cloned()
}

/// Per-level cell description: a section pinned to one indexed root, or a
/// sector strictly between two bounds (either of which may be infinite).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicInterval {
    Section { bound: IndexedRoot },
    Sector { lower: Option<IndexedRoot>, upper: Option<IndexedRoot> },
}

impl SymbolicInterval {
    pub fn full() -> SymbolicInterval {
        SymbolicInterval::Sector { lower: None, upper: None }
    }

    pub fn is_section(&self) -> bool {
        matches!(self, SymbolicInterval::Section { .. })
    }

    /// Bound-defining polynomials of this interval.
    pub fn bound_polys(&self) -> Vec<&Polynomial> {
        match self {
            SymbolicInterval::Section { bound } => vec![&bound.poly],
            SymbolicInterval::Sector { lower, upper } => {
                let mut out = Vec::new();
                if let Some(l) = lower {
                    out.push(&l.poly);
                }
                if let Some(u) = upper {
                    out.push(&u.poly);
                }
                out
            }
        }
    }
}

/// Why a polynomial entered the projection trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TagKind {
    #[serde(rename = "disc")]
    Disc,
    #[serde(rename = "ldcf")]
    Ldcf,
    #[serde(rename = "coeff-nonnull")]
    CoeffNonnull,
    #[serde(rename = "res")]
    Res,
    #[serde(rename = "derivative-fallback")]
    DerivativeFallback,
}

/// Provenance of a trace polynomial: the tag kind, the one or two source
/// polynomials, and the eliminated variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionTag {
    pub kind: TagKind,
    pub parents: Vec<Polynomial>,
    pub var: Var,
}

/// One trace record: a normalized polynomial added during construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub poly: Polynomial,
    pub tag: ProjectionTag,
}

/// Construction counters, monotone during one run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterSet {
    pub resultants_added: u64,
    pub discriminants_added: u64,
    pub ldcfs_added: u64,
    pub coeffs_added: u64,
    pub ldcfs_omitted: u64,
    pub pd_blocked_unbounded: u64,
    pub pd_blocked_no_pairing: u64,
    pub roots_computed: u64,
    pub max_total_degree: u64,
}

/// Stored evidence for an omitted leading coefficient: a four-point chain
/// whose cyclic order, maintained along the underlying cell, keeps the
/// omitted polynomial's root away from the cell interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCertificate {
    pub omitted: Polynomial,
    pub chain: Vec<IndexedRoot>,
}

/// A constructed cell: the sample it contains, one symbolic interval per
/// level, the projection trace, and the counters of the run that built it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub sample: Vec<Rat>,
    pub intervals: Vec<SymbolicInterval>,
    pub trace: Vec<TraceEntry>,
    pub stats: CounterSet,
    pub certificates: Vec<CyclicCertificate>,
}

impl Cell {
    /// All distinct trace polynomials, in first-appearance order.
    pub fn trace_polys(&self) -> Vec<&Polynomial> {
        let mut out: Vec<&Polynomial> = Vec::new();
        for e in &self.trace {
            if !out.contains(&&e.poly) {
                out.push(&e.poly);
            }
        }
        out
    }

    pub fn trace_contains(&self, poly: &Polynomial, kind: TagKind) -> bool {
        self.trace.iter().any(|e| e.poly == *poly && e.tag.kind == kind)
    }
}

/// Exact membership test, level by level: a section level requires the
/// coordinate to equal the evaluated bound, a sector level requires strict
/// between-ness; any undefined bound evaluation means the point is outside.
pub fn contains(c: &Cell, point: &[Rat]) -> bool {
    assert_eq!(point.len(), c.intervals.len());
    for (i, interval) in c.intervals.iter().enumerate() {
        let prefix = &point[..i];
        let coord = &point[i];
        match interval {
            SymbolicInterval::Section { bound } => match eval_indexed_root(bound, prefix) {
                Some(v) => {
                    if v.cmp_rat(coord) != Ordering::Equal {
                        return false;
                    }
                }
                None => return false,
            },
            SymbolicInterval::Sector { lower, upper } => {
                if let Some(l) = lower {
                    match eval_indexed_root(l, prefix) {
                        Some(v) => {
                            if v.cmp_rat(coord) != Ordering::Less {
                                return false;
                            }
                        }
                        None => return false,
                    }
                }
                if let Some(u) = upper {
                    match eval_indexed_root(u, prefix) {
                        Some(v) => {
                            if v.cmp_rat(coord) != Ordering::Greater {
                                return false;
                            }
                        }
                        None => return false,
                    }
                }
            }
        }
    }
    true
}

// --- document format -------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootRef {
    pub poly: String,
    pub index: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundDoc {
    Infinite(String),
    Root(RootRef),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectorDoc {
    pub lower: BoundDoc,
    pub upper: BoundDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum IntervalDoc {
    #[serde(rename = "section")]
    Section(RootRef),
    #[serde(rename = "sector")]
    Sector(SectorDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceEntryDoc {
    pub poly: String,
    pub tag: TagKind,
    pub parents: Vec<String>,
    pub var: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDoc {
    #[serde(rename = "for")]
    pub omitted: String,
    pub chain: Vec<RootRef>,
}

/// Serialized cell document. Rationals appear as decimal-free strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellDoc {
    pub vars: Vec<String>,
    pub sample: Vec<String>,
    pub intervals: Vec<IntervalDoc>,
    pub trace: Vec<TraceEntryDoc>,
    pub stats: CounterSet,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<crate::verify::VerifyReportDoc>,
}

fn root_ref(ir: &IndexedRoot, vars: &VarOrder) -> RootRef {
    RootRef { poly: ir.poly.to_text(vars), index: ir.index }
}

fn bound_doc(b: &Option<IndexedRoot>, vars: &VarOrder, neg: bool) -> BoundDoc {
    match b {
        None => BoundDoc::Infinite(if neg { "-inf".into() } else { "+inf".into() }),
        Some(ir) => BoundDoc::Root(root_ref(ir, vars)),
    }
}

/// Serializes a cell into its document form.
pub fn describe(c: &Cell, vars: &VarOrder) -> CellDoc {
    CellDoc {
        vars: vars.names().to_vec(),
        sample: c.sample.iter().map(format_rat).collect(),
        intervals: c
            .intervals
            .iter()
            .map(|iv| match iv {
                SymbolicInterval::Section { bound } => IntervalDoc::Section(root_ref(bound, vars)),
                SymbolicInterval::Sector { lower, upper } => IntervalDoc::Sector(SectorDoc {
                    lower: bound_doc(lower, vars, true),
                    upper: bound_doc(upper, vars, false),
                }),
            })
            .collect(),
        trace: c
            .trace
            .iter()
            .map(|e| TraceEntryDoc {
                poly: e.poly.to_text(vars),
                tag: e.tag.kind,
                parents: e.tag.parents.iter().map(|p| p.to_text(vars)).collect(),
                var: vars.name(e.tag.var).to_string(),
            })
            .collect(),
        stats: c.stats.clone(),
        certificates: c
            .certificates
            .iter()
            .map(|cert| CertificateDoc {
                omitted: cert.omitted.to_text(vars),
                chain: cert.chain.iter().map(|ir| root_ref(ir, vars)).collect(),
            })
            .collect(),
        verification: None,
    }
}

/// Reconstructs a cell (and its variable order) from a document.
pub fn parse_cell(doc: &CellDoc) -> Result<(VarOrder, Cell), String> {
    let vars = VarOrder::new(doc.vars.clone())?;
    let poly = |s: &str| parse_poly(s, &vars).map_err(|e| e.to_string());
    let root = |r: &RootRef| -> Result<IndexedRoot, String> {
        Ok(IndexedRoot::new(poly(&r.poly)?, r.index))
    };
    let mut intervals = Vec::new();
    for iv in &doc.intervals {
        intervals.push(match iv {
            IntervalDoc::Section(r) => SymbolicInterval::Section { bound: root(r)? },
            IntervalDoc::Sector(s) => {
                let side = |b: &BoundDoc| -> Result<Option<IndexedRoot>, String> {
                    match b {
                        BoundDoc::Infinite(_) => Ok(None),
                        BoundDoc::Root(r) => Ok(Some(root(r)?)),
                    }
                };
                SymbolicInterval::Sector { lower: side(&s.lower)?, upper: side(&s.upper)? }
            }
        });
    }
    let mut trace = Vec::new();
    for e in &doc.trace {
        let var = vars
            .index_of(&e.var)
            .ok_or_else(|| format!("unknown variable `{}` in trace", e.var))?;
        let mut parents = Vec::new();
        for p in &e.parents {
            parents.push(poly(p)?);
        }
        trace.push(TraceEntry {
            poly: poly(&e.poly)?,
            tag: ProjectionTag { kind: e.tag, parents, var },
        });
    }
    let mut sample = Vec::new();
    for s in &doc.sample {
        sample.push(parse_rat(s).map_err(|e| e.to_string())?);
    }
    let mut certificates = Vec::new();
    for c in &doc.certificates {
        let mut chain = Vec::new();
        for r in &c.chain {
            chain.push(root(r)?);
        }
        certificates.push(CyclicCertificate { omitted: poly(&c.omitted)?, chain });
    }
    let cell = Cell { sample, intervals, trace, stats: doc.stats.clone(), certificates };
    Ok((vars, cell))
}
