//! Projective-delineability construction: per-polynomial discriminants only,
//! leading coefficients added selectively (cell bounds, root-free
//! polynomials, and roots that could not be fenced off by resultants), and a
//! symmetric non-equality relation over the level's roots plus infinity. A
//! root outside a bounded cell stays outside, cyclically, when it is tied by
//! nonvanishing resultants to roots on both sides; that chain is stored as a
//! certificate with the cell.

use crate::arith::Rat;
use crate::cellmodel::{Cell, CyclicCertificate, IndexedRoot, SymbolicInterval, TagKind};
use crate::poly::{Polynomial, Var};
use crate::projline::{cyclic_chain, ProjPoint};
use crate::scc::{
    ordering_bc_impl, ordering_ldb_impl, CellOptions, ConstructError, Engine, Heuristic,
    LevelRoots, LevelState, OrderingRelation, PairRelation, Placement,
};

/// An element of the symmetric relation: an indexed root or infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NApproxElem {
    Root(IndexedRoot),
    Infinity,
}

/// Annotation of a symmetric pair: distinct everywhere on the underlying
/// cell, or equal everywhere on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdRelation {
    NotEqual,
    Equal,
}

#[derive(Debug, Clone)]
pub struct NApproxPair {
    pub a: NApproxElem,
    pub b: NApproxElem,
    pub relation: PdRelation,
}

/// The symmetric relation chosen at one level. Pairs with infinity stand for
/// leading-coefficient additions; root pairs stand for resultants.
#[derive(Debug, Clone, Default)]
pub struct NApproxRelation {
    pub pairs: Vec<NApproxPair>,
}

/// Outcome of the leading-coefficient decision for one polynomial at one
/// level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdStatus {
    /// All outside roots fenced by resultants; the ldcf was omitted.
    Omitted,
    /// The cell is unbounded in some direction; ldcf required.
    BlockedUnbounded,
    /// No opposite-side partner with a free resultant; ldcf required.
    BlockedNoPairing,
    /// The polynomial defines a cell bound; its ldcf keeps it delineable.
    LdcfNeededBound,
    /// No real roots at the sample and nonzero ldcf there; the ldcf addition
    /// keeps the root-free fiber empty across the cell.
    LdcfNeededNoRoots,
}

/// Status per polynomial of the processed level.
#[derive(Debug, Clone, Default)]
pub struct PdApplicability {
    pub statuses: Vec<(Polynomial, PdStatus)>,
}

struct BuildOutcome {
    pairs: Vec<NApproxPair>,
    statuses: Vec<(usize, PdStatus)>,
    certificates: Vec<CyclicCertificate>,
    ldcf_entries: Vec<usize>,
    extra_entry_pairs: Vec<(usize, usize)>,
}

/// Builds the symmetric relation from the classical ordering on the same
/// roots: classical pairs carry over (with `<` weakened to `!=`), and each
/// root strictly outside a bounded cell is fenced on its far side by a
/// same-polynomial root, by a resultant the classical ordering already pays
/// for, or failing both by its leading coefficient (an infinity pair).
pub fn build_napprox(
    roots: &LevelRoots,
    interval: &SymbolicInterval,
    classical: &OrderingRelation,
) -> (NApproxRelation, PdApplicability, Vec<CyclicCertificate>) {
    let placement = Placement::from_interval(roots, interval);
    let outcome = build_napprox_impl(roots, &placement, classical);
    let mut statuses = Vec::new();
    for (entry, status) in &outcome.statuses {
        if let Some(poly) = entry_poly(roots, *entry) {
            statuses.push((poly, *status));
        }
    }
    (
        NApproxRelation { pairs: outcome.pairs },
        PdApplicability { statuses },
        outcome.certificates,
    )
}

fn entry_poly(roots: &LevelRoots, entry: usize) -> Option<Polynomial> {
    for pos in &roots.positions {
        for m in &pos.members {
            if m.entry == entry {
                return Some(m.root.poly.clone());
            }
        }
    }
    None
}

fn build_napprox_impl(
    roots: &LevelRoots,
    placement: &Placement,
    classical: &OrderingRelation,
) -> BuildOutcome {
    let v = roots.var;
    let mut pairs: Vec<NApproxPair> = classical
        .pairs
        .iter()
        .map(|p| NApproxPair {
            a: NApproxElem::Root(p.lower.clone()),
            b: NApproxElem::Root(p.upper.clone()),
            relation: match p.relation {
                PairRelation::Less => PdRelation::NotEqual,
                PairRelation::Equal => PdRelation::Equal,
            },
        })
        .collect();
    let classical_entry_pairs = classical.resultant_entry_pairs();

    // entries owning at least one root, in first-root order
    let mut root_entries: Vec<usize> = Vec::new();
    for pos in &roots.positions {
        for m in &pos.members {
            if !root_entries.contains(&m.entry) {
                root_entries.push(m.entry);
            }
        }
    }
    root_entries.sort_unstable();

    let mut statuses: Vec<(usize, PdStatus)> = Vec::new();
    let mut certificates = Vec::new();
    let mut ldcf_entries: Vec<usize> = Vec::new();
    let mut extra_entry_pairs: Vec<(usize, usize)> = Vec::new();

    if !placement.is_bounded() {
        // every root must stay away from infinity: ldcf for all of them
        for pos in &roots.positions {
            for m in &pos.members {
                pairs.push(NApproxPair {
                    a: NApproxElem::Root(m.root.clone()),
                    b: NApproxElem::Infinity,
                    relation: PdRelation::NotEqual,
                });
            }
        }
        for &k in &root_entries {
            statuses.push((k, PdStatus::BlockedUnbounded));
            ldcf_entries.push(k);
        }
        return BuildOutcome { pairs, statuses, certificates, ldcf_entries, extra_entry_pairs };
    }

    let bound_entries: Vec<usize> = match placement.section {
        Some(s) => vec![roots.positions[s].rep(v).entry],
        None => {
            let lp = placement.lower.unwrap();
            let up = placement.upper.unwrap();
            let mut b = vec![roots.positions[lp].rep(v).entry];
            let ue = roots.positions[up].rep(v).entry;
            if !b.contains(&ue) {
                b.push(ue);
            }
            b
        }
    };

    for &k in &root_entries {
        if bound_entries.contains(&k) {
            statuses.push((k, PdStatus::LdcfNeededBound));
            continue;
        }
        if placement.section.is_some() {
            // section case: every root relates to the section root through
            // the classical pairs alone; no far side exists
            statuses.push((k, PdStatus::Omitted));
            continue;
        }
        let lp = placement.lower.unwrap();
        let up = placement.upper.unwrap();
        let mut fenced = true;
        let mut k_pairs: Vec<NApproxPair> = Vec::new();
        let mut k_extra: Vec<(usize, usize)> = Vec::new();
        let mut k_certs: Vec<CyclicCertificate> = Vec::new();
        for (idx, pos) in roots.positions.iter().enumerate() {
            for m in pos.members.iter().filter(|m| m.entry == k) {
                if idx >= lp && idx <= up {
                    // merged with a bound: the classical `=` pair covers it
                    continue;
                }
                let below = idx < lp;
                let opposite: Box<dyn Iterator<Item = usize>> = if below {
                    Box::new(up..roots.positions.len())
                } else {
                    Box::new(0..=lp)
                };
                let mut partner: Option<(u32, usize, usize)> = None; // (deg, pos, rank)
                let mut same_poly: Option<(usize, usize)> = None;
                for pidx in opposite {
                    for (rank, mm) in roots.positions[pidx].members.iter().enumerate() {
                        if mm.entry == k {
                            if same_poly.is_none() {
                                same_poly = Some((pidx, rank));
                            }
                            continue;
                        }
                        let key = (k.min(mm.entry), k.max(mm.entry));
                        if classical_entry_pairs.contains(&key) {
                            let deg = mm.root.poly.degree(v).unwrap_or(0);
                            let cand = (deg, pidx, rank);
                            if partner.is_none() || cand < partner.unwrap() {
                                partner = Some(cand);
                            }
                        }
                    }
                }
                let chosen = same_poly.or(partner.map(|(_, p, r)| (p, r)));
                match chosen {
                    Some((pidx, rank)) => {
                        let mm = &roots.positions[pidx].members[rank];
                        k_pairs.push(NApproxPair {
                            a: NApproxElem::Root(m.root.clone()),
                            b: NApproxElem::Root(mm.root.clone()),
                            relation: PdRelation::NotEqual,
                        });
                        if mm.entry != k {
                            k_extra.push((k.min(mm.entry), k.max(mm.entry)));
                        }
                        let low_rep = roots.positions[lp].rep(v).root.clone();
                        let up_rep = roots.positions[up].rep(v).root.clone();
                        let chain = if below {
                            if pidx == up {
                                vec![low_rep, mm.root.clone(), m.root.clone()]
                            } else {
                                vec![low_rep, up_rep, mm.root.clone(), m.root.clone()]
                            }
                        } else if pidx == lp {
                            vec![mm.root.clone(), up_rep, m.root.clone()]
                        } else {
                            vec![low_rep, up_rep, m.root.clone(), mm.root.clone()]
                        };
                        k_certs.push(CyclicCertificate {
                            omitted: m.root.poly.clone(),
                            chain,
                        });
                    }
                    None => {
                        fenced = false;
                    }
                }
            }
        }
        if fenced {
            statuses.push((k, PdStatus::Omitted));
            pairs.extend(k_pairs);
            extra_entry_pairs.extend(k_extra);
            certificates.extend(k_certs);
        } else {
            // the ldcf covers every root of this polynomial at once
            statuses.push((k, PdStatus::BlockedNoPairing));
            ldcf_entries.push(k);
            for pos in &roots.positions {
                for m in pos.members.iter().filter(|m| m.entry == k) {
                    pairs.push(NApproxPair {
                        a: NApproxElem::Root(m.root.clone()),
                        b: NApproxElem::Infinity,
                        relation: PdRelation::NotEqual,
                    });
                }
            }
        }
    }

    BuildOutcome { pairs, statuses, certificates, ldcf_entries, extra_entry_pairs }
}

/// Runs the projective projection for one level of the engine.
pub(crate) fn project_level(
    engine: &mut Engine,
    state: &LevelState,
    level: usize,
) -> Result<(), ConstructError> {
    let v = Var(level - 1);
    // non-nullification coefficient and discriminant per polynomial
    for (k, entry) in state.entries.iter().enumerate() {
        if state.substituted[k].is_none() {
            continue;
        }
        let p = entry.poly.clone();
        if let Some(c) = engine.nonnull_coeff_choice(&p, level) {
            if engine.add_projection(&c, TagKind::CoeffNonnull, vec![p.clone()], v, level) {
                engine.counters.coeffs_added += 1;
            }
        }
        let disc = crate::poly::discriminant(&p, v)
            .map_err(|e| ConstructError::Internal(format!("discriminant: {e}")))?;
        if engine.add_projection(&disc, TagKind::Disc, vec![p.clone()], v, level) {
            engine.counters.discriminants_added += 1;
        }
    }

    let mut ldcf_done = vec![false; state.entries.len()];
    let ensure_ldcf = |engine: &mut Engine, k: usize, done: &mut Vec<bool>| {
        if done[k] {
            return;
        }
        done[k] = true;
        let p = &state.entries[k].poly;
        let ldcf = p.ldcf(v).expect("level polynomial is nonzero");
        if engine.add_projection(&ldcf, TagKind::Ldcf, vec![p.clone()], v, level) {
            engine.counters.ldcfs_added += 1;
        }
    };

    // bound-defining polynomials keep their classical delineability
    let bound_entries: Vec<usize> = {
        let mut b = Vec::new();
        let push = |pos: Option<usize>, b: &mut Vec<usize>| {
            if let Some(i) = pos {
                let e = state.roots.positions[i].rep(v).entry;
                if !b.contains(&e) {
                    b.push(e);
                }
            }
        };
        push(state.placement.section, &mut b);
        push(state.placement.lower, &mut b);
        push(state.placement.upper, &mut b);
        b
    };
    for &k in &bound_entries {
        ensure_ldcf(engine, k, &mut ldcf_done);
    }

    // classical baseline ordering on the same roots
    let relation = match engine.heuristic.base() {
        Heuristic::Bc => ordering_bc_impl(&state.roots, &state.placement),
        _ => ordering_ldb_impl(&state.roots, &state.placement),
    };

    let outcome = build_napprox_impl(&state.roots, &state.placement, &relation);

    for &k in &outcome.ldcf_entries {
        ensure_ldcf(engine, k, &mut ldcf_done);
    }
    for (k, status) in &outcome.statuses {
        match status {
            PdStatus::Omitted => engine.counters.ldcfs_omitted += 1,
            PdStatus::BlockedUnbounded => engine.counters.pd_blocked_unbounded += 1,
            PdStatus::BlockedNoPairing => engine.counters.pd_blocked_no_pairing += 1,
            PdStatus::LdcfNeededBound | PdStatus::LdcfNeededNoRoots => {}
        }
        let _ = k;
    }

    // polynomials with no real roots at the sample prefix
    for (k, entry) in state.entries.iter().enumerate() {
        let Some(sub) = &state.substituted[k] else { continue };
        let has_roots = state
            .roots
            .positions
            .iter()
            .any(|pos| pos.members.iter().any(|m| m.entry == k));
        if has_roots {
            continue;
        }
        let _ = sub;
        let p = &entry.poly;
        let ldcf_value_nonzero = {
            let ldcf = p.ldcf(v).unwrap();
            !ldcf
                .eval_prefix(&engine.sample[..level - 1])
                .constant_value()
                .expect("ldcf involves only prefix variables")
                .eq(&Rat::from_integer(0.into()))
        };
        let status = if ldcf_value_nonzero {
            PdStatus::LdcfNeededNoRoots
        } else {
            PdStatus::BlockedNoPairing
        };
        if status == PdStatus::BlockedNoPairing {
            engine.counters.pd_blocked_no_pairing += 1;
        }
        ensure_ldcf(engine, k, &mut ldcf_done);
    }

    // resultants: the classical pairs plus the (already classical) reuse pairs
    let mut entry_pairs = relation.resultant_entry_pairs();
    for pair in outcome.extra_entry_pairs {
        if !entry_pairs.contains(&pair) {
            entry_pairs.push(pair);
        }
    }
    engine.emit_resultants(&entry_pairs, state, level)?;
    engine.certificates.extend(outcome.certificates);
    Ok(())
}

/// Evaluates an indexed root at a prefix projectively: the j-th real root
/// when defined; infinity when the index exceeds the real roots remaining
/// after a degree drop (the root passed through infinity); `None` otherwise.
pub fn eval_root_projective(ir: &IndexedRoot, prefix: &[Rat]) -> Option<ProjPoint> {
    let substituted = ir.poly.eval_prefix(prefix);
    if substituted.is_zero() {
        return None;
    }
    let v = ir.poly.main_var().expect("indexed root polynomial is non-constant");
    let full_degree = ir.poly.degree(v).unwrap();
    let (real_count, value) = if substituted.is_constant() {
        (0u32, None)
    } else {
        let roots = crate::realroots::isolate(&substituted).ok()?;
        let count = roots.len() as u32;
        (count, roots.get(ir.index).cloned())
    };
    if let Some(val) = value {
        return Some(ProjPoint::Finite(val));
    }
    let dropped = full_degree - substituted.degree(v).unwrap_or(0);
    if ir.index > real_count && dropped > 0 {
        Some(ProjPoint::Infinity)
    } else {
        None
    }
}

/// Re-evaluates a stored cyclic certificate at a rational prefix.
pub fn certificate_holds_at(cert: &CyclicCertificate, prefix: &[Rat]) -> bool {
    let mut points = Vec::with_capacity(cert.chain.len());
    for ir in &cert.chain {
        match eval_root_projective(ir, prefix) {
            Some(p) => points.push(p),
            None => return false,
        }
    }
    cyclic_chain(&points).unwrap_or(false)
}

/// Summary view of the leading-coefficient decisions recorded in a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdStats {
    pub ldcfs_omitted: u64,
    pub blocked_unbounded: u64,
    pub blocked_no_pairing: u64,
}

impl PdStats {
    /// Fraction of decisions where the omission applied, as an exact
    /// rational; `None` when no decision was taken.
    pub fn applied_ratio(&self) -> Option<Rat> {
        let den = self.ldcfs_omitted + self.blocked_unbounded + self.blocked_no_pairing;
        if den == 0 {
            return None;
        }
        Some(Rat::new(self.ldcfs_omitted.into(), den.into()))
    }
}

pub fn pd_stats(c: &Cell) -> PdStats {
    PdStats {
        ldcfs_omitted: c.stats.ldcfs_omitted,
        blocked_unbounded: c.stats.pd_blocked_unbounded,
        blocked_no_pairing: c.stats.pd_blocked_no_pairing,
    }
}

/// Builds a sign-invariant cell with the projective-delineability
/// projection. `heuristic` must be `BcPd` or `LdbPd`.
pub fn construct_cell_pd(
    polys: &[Polynomial],
    sample: &[Rat],
    heuristic: Heuristic,
) -> Result<Cell, ConstructError> {
    construct_cell_pd_opts(polys, sample, heuristic, CellOptions::default())
}

pub fn construct_cell_pd_opts(
    polys: &[Polynomial],
    sample: &[Rat],
    heuristic: Heuristic,
    options: CellOptions,
) -> Result<Cell, ConstructError> {
    assert!(heuristic.is_projective(), "use construct_cell for classical variants");
    Engine::new(polys, sample, heuristic, options)?.run()
}
