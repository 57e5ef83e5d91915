//! Classical single cell construction: the level loop, symbolic-interval
//! selection, non-nullification coefficients, the delineability projection
//! (discriminant plus leading coefficient per polynomial), and the two
//! root-ordering heuristics with their resultants.

use std::cmp::Ordering;

use crate::arith::{sign, Rat};
use crate::cellmodel::{
    Cell, CounterSet, CyclicCertificate, IndexedRoot, ProjectionTag, SymbolicInterval, TagKind,
    TraceEntry,
};
use crate::poly::{discriminant, gcd, normalize_single, resultant, Polynomial, Var};
use crate::realroots::{isolate, AlgebraicValue};

/// Strategy selecting the root-ordering relation, and with it the resultants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heuristic {
    /// Pair every outside root directly with the nearest cell bound.
    Bc,
    /// Chain roots greedily, minimizing resultant degree bounds.
    Ldb,
    /// Biggest-cell pairing on the projective construction.
    BcPd,
    /// Degree-greedy pairing on the projective construction.
    LdbPd,
}

impl Heuristic {
    pub fn is_projective(self) -> bool {
        matches!(self, Heuristic::BcPd | Heuristic::LdbPd)
    }

    /// The classical pairing strategy underlying this heuristic.
    pub fn base(self) -> Heuristic {
        match self {
            Heuristic::Bc | Heuristic::BcPd => Heuristic::Bc,
            Heuristic::Ldb | Heuristic::LdbPd => Heuristic::Ldb,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            Heuristic::Bc => "bc",
            Heuristic::Ldb => "ldb",
            Heuristic::BcPd => "bc-pd",
            Heuristic::LdbPd => "ldb-pd",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<Heuristic> {
        match s {
            "bc" => Some(Heuristic::Bc),
            "ldb" => Some(Heuristic::Ldb),
            "bc-pd" => Some(Heuristic::BcPd),
            "ldb-pd" => Some(Heuristic::LdbPd),
            _ => None,
        }
    }
}

/// Construction failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("polynomial nullified at level {level}")]
    Nullified { poly: Polynomial, level: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Optional behaviors of a construction run.
#[derive(Debug, Clone, Copy, Default)]
pub struct CellOptions {
    /// On nullification, add coefficients and minimal-order partial
    /// derivatives instead of failing. Best effort; off by default.
    pub derivative_fallback: bool,
}

/// One indexed root taking a known value at the sample prefix.
#[derive(Debug, Clone)]
pub struct TaggedRoot {
    pub root: IndexedRoot,
    /// Index into the level's polynomial list, in processing order.
    pub entry: usize,
}

/// All indexed roots at one position (equal values merged).
#[derive(Debug, Clone)]
pub struct RootPosition {
    pub value: AlgebraicValue,
    pub members: Vec<TaggedRoot>,
}

impl RootPosition {
    /// Representative: minimal main-variable degree, then first appearance.
    pub fn rep(&self, v: Var) -> &TaggedRoot {
        self.members
            .iter()
            .min_by_key(|t| (t.root.poly.degree(v).unwrap_or(0), t.entry, t.root.index))
            .unwrap()
    }
}

/// The sorted, merged root positions of one level.
#[derive(Debug, Clone)]
pub struct LevelRoots {
    pub var: Var,
    pub positions: Vec<RootPosition>,
}

/// Where the sample coordinate sits among the root positions.
#[derive(Debug, Clone)]
pub(crate) struct Placement {
    pub interval: SymbolicInterval,
    pub section: Option<usize>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
}

impl Placement {
    pub(crate) fn is_bounded(&self) -> bool {
        self.section.is_some() || (self.lower.is_some() && self.upper.is_some())
    }

    pub(crate) fn from_interval(roots: &LevelRoots, interval: &SymbolicInterval) -> Placement {
        let find = |ir: &IndexedRoot| {
            roots
                .positions
                .iter()
                .position(|p| p.rep(roots.var).root == *ir)
                .expect("interval bound is a representative root")
        };
        match interval {
            SymbolicInterval::Section { bound } => Placement {
                interval: interval.clone(),
                section: Some(find(bound)),
                lower: None,
                upper: None,
            },
            SymbolicInterval::Sector { lower, upper } => Placement {
                interval: interval.clone(),
                section: None,
                lower: lower.as_ref().map(&find),
                upper: upper.as_ref().map(&find),
            },
        }
    }
}

pub(crate) fn place(roots: &LevelRoots, s_i: &Rat) -> Placement {
    let positions = &roots.positions;
    let v = roots.var;
    let mut below = None;
    for (idx, pos) in positions.iter().enumerate() {
        match pos.value.cmp_rat(s_i) {
            Ordering::Equal => {
                let bound = pos.rep(v).root.clone();
                return Placement {
                    interval: SymbolicInterval::Section { bound },
                    section: Some(idx),
                    lower: None,
                    upper: None,
                };
            }
            Ordering::Less => below = Some(idx),
            Ordering::Greater => break,
        }
    }
    let above = match below {
        Some(b) if b + 1 < positions.len() => Some(b + 1),
        Some(_) => None,
        None if !positions.is_empty() => Some(0),
        None => None,
    };
    let lower = below.map(|i| positions[i].rep(v).root.clone());
    let upper = above.map(|i| positions[i].rep(v).root.clone());
    Placement {
        interval: SymbolicInterval::Sector { lower, upper },
        section: None,
        lower: below,
        upper: above,
    }
}

/// Selects the symbolic interval for one level: a section when the sample
/// coordinate equals a root, otherwise the sector between the neighboring
/// roots (unbounded where no neighbor exists).
pub fn compute_interval(roots: &LevelRoots, s_i: &Rat) -> SymbolicInterval {
    place(roots, s_i).interval
}

/// Annotation of an ordering pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRelation {
    Less,
    Equal,
}

/// An ordered pair of indexed roots chosen by a heuristic.
#[derive(Debug, Clone)]
pub struct OrderedPair {
    pub lower: IndexedRoot,
    pub upper: IndexedRoot,
    pub relation: PairRelation,
    pub lower_entry: usize,
    pub upper_entry: usize,
    pub lower_pos: usize,
    pub upper_pos: usize,
}

/// The chosen relation on the level's indexed roots; its reflexive-transitive
/// closure is a partial order placing every root relative to the cell bounds.
#[derive(Debug, Clone, Default)]
pub struct OrderingRelation {
    pub pairs: Vec<OrderedPair>,
}

impl OrderingRelation {
    /// Distinct-polynomial pairs (by entry index), deduplicated unordered, in
    /// first-appearance order. These are the resultants the level will emit.
    pub fn resultant_entry_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for p in &self.pairs {
            if p.lower_entry == p.upper_entry {
                continue;
            }
            let key = (p.lower_entry.min(p.upper_entry), p.lower_entry.max(p.upper_entry));
            if !out.contains(&key) {
                out.push(key);
            }
        }
        out
    }

    /// Sum of `deg(p) * deg(q)` over distinct-polynomial pairs, one term per
    /// chosen pair (no deduplication): the degree bound of the would-be
    /// resultants.
    pub fn degree_cost(&self, v: Var) -> u64 {
        self.pairs
            .iter()
            .filter(|p| p.lower_entry != p.upper_entry)
            .map(|p| {
                p.lower.poly.degree(v).unwrap_or(0) as u64
                    * p.upper.poly.degree(v).unwrap_or(0) as u64
            })
            .sum()
    }

    /// Structural coverage check: every root position connects through the
    /// pair graph to a cell bound (or is itself a bound).
    pub fn covers(&self, roots: &LevelRoots, interval: &SymbolicInterval) -> bool {
        let placement = Placement::from_interval(roots, interval);
        let n = roots.positions.len();
        if n == 0 {
            return true;
        }
        let anchors: Vec<usize> = match (&placement.section, &placement.lower, &placement.upper) {
            (Some(s), _, _) => vec![*s],
            (None, l, u) => l.iter().chain(u.iter()).copied().collect(),
        };
        if anchors.is_empty() {
            // no bounds: coverage demands no roots at all
            return n == 0;
        }
        let mut reach = vec![false; n];
        for a in &anchors {
            reach[*a] = true;
        }
        loop {
            let mut changed = false;
            for p in &self.pairs {
                let (a, b) = (p.lower_pos, p.upper_pos);
                if reach[a] != reach[b] {
                    reach[a] = true;
                    reach[b] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        reach.iter().all(|r| *r)
    }
}

fn equal_value_pairs(roots: &LevelRoots, out: &mut Vec<OrderedPair>) {
    let v = roots.var;
    for (idx, pos) in roots.positions.iter().enumerate() {
        if pos.members.len() < 2 {
            continue;
        }
        let rep = pos.rep(v).clone();
        for m in &pos.members {
            if m.root == rep.root {
                continue;
            }
            out.push(OrderedPair {
                lower: rep.root.clone(),
                upper: m.root.clone(),
                relation: PairRelation::Equal,
                lower_entry: rep.entry,
                upper_entry: m.entry,
                lower_pos: idx,
                upper_pos: idx,
            });
        }
    }
}

fn pair_between(roots: &LevelRoots, lo_pos: usize, hi_pos: usize) -> OrderedPair {
    let v = roots.var;
    let lo = roots.positions[lo_pos].rep(v).clone();
    let hi = roots.positions[hi_pos].rep(v).clone();
    OrderedPair {
        lower: lo.root,
        upper: hi.root,
        relation: PairRelation::Less,
        lower_entry: lo.entry,
        upper_entry: hi.entry,
        lower_pos: lo_pos,
        upper_pos: hi_pos,
    }
}

/// Biggest-cell ordering: every root below the lower bound pairs directly
/// with the lower bound, every root above the upper bound with the upper
/// bound, equal values pair with `=`, and the two bounds pair with each
/// other.
pub fn ordering_bc(roots: &LevelRoots, interval: &SymbolicInterval) -> OrderingRelation {
    let placement = Placement::from_interval(roots, interval);
    ordering_bc_impl(roots, &placement)
}

pub(crate) fn ordering_bc_impl(roots: &LevelRoots, placement: &Placement) -> OrderingRelation {
    let mut pairs = Vec::new();
    equal_value_pairs(roots, &mut pairs);
    let n = roots.positions.len();
    match (placement.section, placement.lower, placement.upper) {
        (Some(s), _, _) => {
            for j in 0..n {
                if j < s {
                    pairs.push(pair_between(roots, j, s));
                } else if j > s {
                    pairs.push(pair_between(roots, s, j));
                }
            }
        }
        (None, lower, upper) => {
            if let Some(lp) = lower {
                for j in (0..lp).rev() {
                    pairs.push(pair_between(roots, j, lp));
                }
            }
            if let (Some(lp), Some(up)) = (lower, upper) {
                pairs.push(pair_between(roots, lp, up));
            }
            if let Some(up) = upper {
                for j in (up + 1)..n {
                    pairs.push(pair_between(roots, up, j));
                }
            }
        }
    }
    OrderingRelation { pairs }
}

/// Lowest-degree-barrier ordering: processes roots outward from the cell
/// bounds, anchoring each to the partner (bound or already-anchored root on
/// the same side) that minimizes the degree bound of the would-be resultant.
/// Ties break by sorted position, then by member appearance.
pub fn ordering_ldb(roots: &LevelRoots, interval: &SymbolicInterval) -> OrderingRelation {
    let placement = Placement::from_interval(roots, interval);
    ordering_ldb_impl(roots, &placement)
}

pub(crate) fn ordering_ldb_impl(roots: &LevelRoots, placement: &Placement) -> OrderingRelation {
    let v = roots.var;
    let mut pairs = Vec::new();
    equal_value_pairs(roots, &mut pairs);
    let n = roots.positions.len();

    let anchor_side = |bound_pos: usize, below: bool, pairs: &mut Vec<OrderedPair>| {
        let mut anchored: Vec<usize> = vec![bound_pos];
        let walk: Vec<usize> = if below {
            (0..bound_pos).rev().collect()
        } else {
            ((bound_pos + 1)..n).collect()
        };
        for j in walk {
            let moving = roots.positions[j].rep(v).clone();
            let mdeg = moving.root.poly.degree(v).unwrap_or(0) as u64;
            // candidates: every member of the bound or of an anchored position
            let mut best: Option<(u64, usize, usize)> = None; // (cost, pos, member rank)
            for &c in &anchored {
                for (rank, m) in roots.positions[c].members.iter().enumerate() {
                    let cost = mdeg * m.root.poly.degree(v).unwrap_or(0) as u64;
                    let key = (cost, c, rank);
                    if best.is_none() || key < best.unwrap() {
                        best = Some(key);
                    }
                }
            }
            let (_, c, rank) = best.expect("bound position always offers a candidate");
            let partner = roots.positions[c].members[rank].clone();
            let (lo, hi, lo_pos, hi_pos) = if below {
                (moving, partner, j, c)
            } else {
                (partner, moving, c, j)
            };
            pairs.push(OrderedPair {
                lower: lo.root.clone(),
                upper: hi.root.clone(),
                relation: PairRelation::Less,
                lower_entry: lo.entry,
                upper_entry: hi.entry,
                lower_pos: lo_pos,
                upper_pos: hi_pos,
            });
            anchored.push(j);
        }
    };

    match (placement.section, placement.lower, placement.upper) {
        (Some(s), _, _) => {
            anchor_side(s, true, &mut pairs);
            anchor_side(s, false, &mut pairs);
        }
        (None, lower, upper) => {
            if let Some(lp) = lower {
                anchor_side(lp, true, &mut pairs);
            }
            if let (Some(lp), Some(up)) = (lower, upper) {
                pairs.push(pair_between(roots, lp, up));
            }
            if let Some(up) = upper {
                anchor_side(up, false, &mut pairs);
            }
        }
    }
    OrderingRelation { pairs }
}

// --- engine ----------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct PoolEntry {
    pub poly: Polynomial,
    pub tag: Option<ProjectionTag>,
}

pub(crate) struct Engine {
    pub nvars: usize,
    pub sample: Vec<Rat>,
    pub pool: Vec<PoolEntry>,
    pub trace: Vec<TraceEntry>,
    pub counters: CounterSet,
    pub certificates: Vec<CyclicCertificate>,
    pub options: CellOptions,
    pub heuristic: Heuristic,
}

/// State of one level's polynomials during processing.
pub(crate) struct LevelState {
    pub entries: Vec<PoolEntry>,
    /// Substituted univariate polynomials, per entry; `None` marks an entry
    /// that nullified and was handed to the fallback.
    pub substituted: Vec<Option<Polynomial>>,
    pub roots: LevelRoots,
    pub placement: Placement,
}

impl Engine {
    pub(crate) fn new(
        polys: &[Polynomial],
        sample: &[Rat],
        heuristic: Heuristic,
        options: CellOptions,
    ) -> Result<Engine, ConstructError> {
        let nvars = sample.len();
        let mut pool = Vec::new();
        let mut max_deg = 0u64;
        for p in polys {
            if p.is_constant() {
                return Err(ConstructError::Internal(
                    "constant polynomials are rejected before construction".into(),
                ));
            }
            if p.level() > nvars {
                return Err(ConstructError::Internal(format!(
                    "polynomial level {} exceeds sample arity {nvars}",
                    p.level()
                )));
            }
            let canon = p.canonical();
            max_deg = max_deg.max(canon.total_degree() as u64);
            if !pool.iter().any(|e: &PoolEntry| e.poly == canon) {
                pool.push(PoolEntry { poly: canon, tag: None });
            }
        }
        let mut counters = CounterSet::default();
        counters.max_total_degree = max_deg;
        Ok(Engine {
            nvars,
            sample: sample.to_vec(),
            pool,
            trace: Vec::new(),
            counters,
            certificates: Vec::new(),
            options,
            heuristic,
        })
    }

    pub(crate) fn run(mut self) -> Result<Cell, ConstructError> {
        let n = self.nvars;
        let mut intervals = vec![SymbolicInterval::full(); n];
        for level in (1..=n).rev() {
            let state = self.process_level(level)?;
            intervals[level - 1] = state.placement.interval.clone();
            if level >= 2 {
                if self.heuristic.is_projective() {
                    crate::scc_projective::project_level(&mut self, &state, level)?;
                } else {
                    self.project_classical(&state, level)?;
                }
            }
        }
        Ok(Cell {
            sample: self.sample,
            intervals,
            trace: self.trace,
            stats: self.counters,
            certificates: self.certificates,
        })
    }

    /// Extracts the level's polynomials, refines them pairwise coprime (for
    /// levels that will emit resultants), handles nullification, isolates
    /// roots, and selects the symbolic interval.
    fn process_level(&mut self, level: usize) -> Result<LevelState, ConstructError> {
        let mut entries = Vec::new();
        let mut rest = Vec::new();
        for e in self.pool.drain(..) {
            if e.poly.level() == level {
                entries.push(e);
            } else {
                rest.push(e);
            }
        }
        self.pool = rest;

        if level >= 2 {
            self.refine_level_coprime(&mut entries, level);
        }

        let prefix: Vec<Rat> = self.sample[..level - 1].to_vec();
        let mut substituted: Vec<Option<Polynomial>> = Vec::new();
        let mut idx = 0;
        while idx < entries.len() {
            let up = entries[idx].poly.eval_prefix(&prefix);
            if up.is_zero() {
                if !self.options.derivative_fallback {
                    return Err(ConstructError::Nullified {
                        poly: entries[idx].poly.clone(),
                        level,
                    });
                }
                let nullified = entries[idx].poly.clone();
                self.fallback_for_nullified(&nullified, level, &mut entries);
                substituted.push(None);
            } else {
                substituted.push(Some(up));
            }
            idx += 1;
        }

        let roots = self.level_roots(&entries, &substituted, level);
        let placement = place(&roots, &self.sample[level - 1]);
        Ok(LevelState { entries, substituted, roots, placement })
    }

    /// Splits level entries until pairwise coprime, so every resultant the
    /// level emits is nonzero. New pieces inherit the provenance of the entry
    /// they split from; pieces of lower level return to the pool.
    fn refine_level_coprime(&mut self, entries: &mut Vec<PoolEntry>, level: usize) {
        'outer: loop {
            for i in 0..entries.len() {
                for j in (i + 1)..entries.len() {
                    let g = gcd(&entries[i].poly, &entries[j].poly).expect("nonzero entries");
                    if g.is_constant() {
                        continue;
                    }
                    let pi = entries[i].poly.exact_div(&g).expect("gcd divides");
                    let pj = entries[j].poly.exact_div(&g).expect("gcd divides");
                    let tag_i = entries[i].tag.clone();
                    let tag_j = entries[j].tag.clone();
                    let shared_tag = tag_j.or(tag_i);
                    entries.remove(j);
                    entries.remove(i);
                    for (piece, tag) in [
                        (g, shared_tag.clone()),
                        (pi, entries_tag(&shared_tag)),
                        (pj, entries_tag(&shared_tag)),
                    ] {
                        for f in normalize_single(&piece) {
                            self.place_piece(f, tag.clone(), entries, level);
                        }
                    }
                    continue 'outer;
                }
            }
            return;
        }
    }

    fn place_piece(
        &mut self,
        f: Polynomial,
        tag: Option<ProjectionTag>,
        entries: &mut Vec<PoolEntry>,
        level: usize,
    ) {
        debug_assert!(!f.is_constant());
        self.counters.max_total_degree =
            self.counters.max_total_degree.max(f.total_degree() as u64);
        if let Some(t) = &tag {
            if !self.trace.iter().any(|e| e.poly == f && e.tag == *t) {
                self.trace.push(TraceEntry { poly: f.clone(), tag: t.clone() });
            }
        }
        if f.level() == level {
            if !entries.iter().any(|e| e.poly == f) {
                entries.push(PoolEntry { poly: f, tag });
            }
        } else if !self.pool.iter().any(|e| e.poly == f) && f.level() < level {
            self.pool.push(PoolEntry { poly: f, tag });
        }
    }

    /// Nullification fallback: the coefficients of the nullified polynomial
    /// (which all vanish at the prefix and so pin the lower cell to the
    /// nullifying variety), plus its nonzero partial derivatives of minimal
    /// total order at the sample.
    fn fallback_for_nullified(
        &mut self,
        p: &Polynomial,
        level: usize,
        entries: &mut Vec<PoolEntry>,
    ) {
        let v = Var(level - 1);
        let tag = ProjectionTag {
            kind: TagKind::DerivativeFallback,
            parents: vec![p.clone()],
            var: v,
        };
        for c in p.coeffs(v) {
            if c.is_zero() || c.is_constant() {
                continue;
            }
            for f in normalize_single(&c) {
                self.place_piece(f, Some(tag.clone()), entries, level);
            }
        }
        // breadth-first over derivative orders
        let mut frontier = vec![p.clone()];
        for _order in 1..=p.total_degree().max(1) {
            let mut next: Vec<Polynomial> = Vec::new();
            for q in &frontier {
                for k in 0..self.nvars {
                    let d = q.derivative(Var(k));
                    if !d.is_zero() && !next.contains(&d) {
                        next.push(d);
                    }
                }
            }
            let hits: Vec<&Polynomial> = next
                .iter()
                .filter(|d| sign(&d.eval(&self.sample)) != 0)
                .collect();
            if !hits.is_empty() {
                for d in hits {
                    if d.is_constant() {
                        continue;
                    }
                    for f in normalize_single(d) {
                        self.place_piece(f, Some(tag.clone()), entries, level);
                    }
                }
                return;
            }
            frontier = next;
            if frontier.is_empty() {
                return;
            }
        }
    }

    fn level_roots(
        &mut self,
        entries: &[PoolEntry],
        substituted: &[Option<Polynomial>],
        level: usize,
    ) -> LevelRoots {
        let v = Var(level - 1);
        let mut tagged: Vec<(AlgebraicValue, TaggedRoot)> = Vec::new();
        for (k, up) in substituted.iter().enumerate() {
            let Some(up) = up else { continue };
            if up.is_constant() {
                continue;
            }
            let roots = isolate(up).expect("nonzero substituted polynomial");
            self.counters.roots_computed += roots.len() as u64;
            for (j, value) in roots.roots().iter().enumerate() {
                tagged.push((
                    value.clone(),
                    TaggedRoot {
                        root: IndexedRoot::new(entries[k].poly.clone(), j as u32 + 1),
                        entry: k,
                    },
                ));
            }
        }
        tagged.sort_by(|a, b| {
            crate::realroots::compare(&a.0, &b.0)
                .then(a.1.entry.cmp(&b.1.entry))
                .then(a.1.root.index.cmp(&b.1.root.index))
        });
        let mut positions: Vec<RootPosition> = Vec::new();
        for (value, troot) in tagged {
            match positions.last_mut() {
                Some(last)
                    if crate::realroots::compare(&last.value, &value) == Ordering::Equal =>
                {
                    last.members.push(troot);
                }
                _ => positions.push(RootPosition { value, members: vec![troot] }),
            }
        }
        LevelRoots { var: v, positions }
    }

    /// Evaluates a coefficient (a polynomial of lower level) at the prefix.
    fn coeff_value(&self, c: &Polynomial, level: usize) -> Rat {
        c.eval_prefix(&self.sample[..level - 1])
            .constant_value()
            .expect("coefficient involves only prefix variables")
    }

    /// Line-11 policy, shared by both variants: nothing when some nonzero
    /// coefficient is constant; otherwise the leading coefficient when it is
    /// nonzero at the sample (free through deduplication); otherwise the
    /// minimal-total-degree nonzero coefficient, ties from the highest power
    /// down.
    pub(crate) fn nonnull_coeff_choice(
        &self,
        p: &Polynomial,
        level: usize,
    ) -> Option<Polynomial> {
        let v = Var(level - 1);
        let coeffs = p.coeffs(v);
        let candidates: Vec<(u32, &Polynomial)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero() && sign(&self.coeff_value(c, level)) != 0)
            .map(|(k, c)| (k as u32, c))
            .collect();
        if candidates.iter().any(|(_, c)| c.is_constant()) {
            return None;
        }
        let top = coeffs.len() as u32 - 1;
        if let Some((_, ldcf)) = candidates.iter().find(|(k, _)| *k == top) {
            return Some((*ldcf).clone());
        }
        candidates
            .iter()
            .min_by_key(|(k, c)| (c.total_degree(), std::cmp::Reverse(*k)))
            .map(|(_, c)| (*c).clone())
    }

    /// Normalizes and installs one projection emission; returns true when it
    /// contributed at least one non-constant polynomial.
    pub(crate) fn add_projection(
        &mut self,
        poly: &Polynomial,
        kind: TagKind,
        parents: Vec<Polynomial>,
        v: Var,
        level: usize,
    ) -> bool {
        let factors = normalize_single(poly);
        if factors.is_empty() {
            return false;
        }
        let tag = ProjectionTag { kind, parents, var: v };
        let mut dummy = Vec::new();
        for f in factors {
            debug_assert!(f.level() < level, "projection eliminates the level variable");
            self.place_piece(f, Some(tag.clone()), &mut dummy, level);
        }
        debug_assert!(dummy.is_empty());
        true
    }

    fn project_classical(&mut self, state: &LevelState, level: usize) -> Result<(), ConstructError> {
        let v = Var(level - 1);
        for (k, entry) in state.entries.iter().enumerate() {
            if state.substituted[k].is_none() {
                continue; // nullified entries are covered by the fallback
            }
            let p = entry.poly.clone();
            if let Some(c) = self.nonnull_coeff_choice(&p, level) {
                if self.add_projection(&c, TagKind::CoeffNonnull, vec![p.clone()], v, level) {
                    self.counters.coeffs_added += 1;
                }
            }
            let disc = discriminant(&p, v)
                .map_err(|e| ConstructError::Internal(format!("discriminant: {e}")))?;
            if self.add_projection(&disc, TagKind::Disc, vec![p.clone()], v, level) {
                self.counters.discriminants_added += 1;
            }
            let ldcf = p.ldcf(v).expect("level polynomial is nonzero");
            if self.add_projection(&ldcf, TagKind::Ldcf, vec![p.clone()], v, level) {
                self.counters.ldcfs_added += 1;
            }
        }
        let relation = match self.heuristic.base() {
            Heuristic::Bc => ordering_bc_impl(&state.roots, &state.placement),
            _ => ordering_ldb_impl(&state.roots, &state.placement),
        };
        self.emit_resultants(&relation.resultant_entry_pairs(), state, level)?;
        Ok(())
    }

    /// Computes and installs the resultants for the chosen entry pairs.
    pub(crate) fn emit_resultants(
        &mut self,
        pairs: &[(usize, usize)],
        state: &LevelState,
        level: usize,
    ) -> Result<(), ConstructError> {
        let v = Var(level - 1);
        for (a, b) in pairs {
            let pa = &state.entries[*a].poly;
            let pb = &state.entries[*b].poly;
            let res = resultant(pa, pb, v)
                .map_err(|e| ConstructError::Internal(format!("resultant: {e}")))?;
            if res.is_zero() {
                return Err(ConstructError::Internal(
                    "zero resultant reached the projection (non-coprime basis)".into(),
                ));
            }
            if self.add_projection(&res, TagKind::Res, vec![pa.clone(), pb.clone()], v, level) {
                self.counters.resultants_added += 1;
            }
        }
        Ok(())
    }
}

fn entries_tag(shared: &Option<ProjectionTag>) -> Option<ProjectionTag> {
    shared.clone()
}

/// Builds a sign-invariant cell around `sample` with the classical
/// projection. `heuristic` must be `Bc` or `Ldb`; inputs are expected to be
/// a coprime squarefree basis (see `poly::normalize_basis`).
pub fn construct_cell(
    polys: &[Polynomial],
    sample: &[Rat],
    heuristic: Heuristic,
) -> Result<Cell, ConstructError> {
    construct_cell_opts(polys, sample, heuristic, CellOptions::default())
}

pub fn construct_cell_opts(
    polys: &[Polynomial],
    sample: &[Rat],
    heuristic: Heuristic,
    options: CellOptions,
) -> Result<Cell, ConstructError> {
    assert!(!heuristic.is_projective(), "use construct_cell_pd for projective variants");
    Engine::new(polys, sample, heuristic, options)?.run()
}

/// Dispatches on the heuristic variant.
pub fn construct(
    polys: &[Polynomial],
    sample: &[Rat],
    heuristic: Heuristic,
    options: CellOptions,
) -> Result<Cell, ConstructError> {
    if heuristic.is_projective() {
        crate::scc_projective::construct_cell_pd_opts(polys, sample, heuristic, options)
    } else {
        construct_cell_opts(polys, sample, heuristic, options)
    }
}
