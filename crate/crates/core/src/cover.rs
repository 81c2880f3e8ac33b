//! Exact minimum set cover by branch and bound, used for the smallest
//! string attractor search. Candidates are positions, elements are
//! distinct-factor classes.

use crate::error::{Error, Result};

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0u64; n.div_ceil(64)]
}

#[inline]
fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1u64 << (i % 64);
}

#[inline]
fn bit_get(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn count_ones(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Number of set bits of `a` outside `mask`.
fn count_new(a: &[u64], mask: &[u64]) -> usize {
    a.iter()
        .zip(mask)
        .map(|(x, y)| (x & !y).count_ones() as usize)
        .sum()
}

pub(crate) struct CoverInstance {
    pub elements: usize,
    /// Per candidate: bitset of covered elements. Candidate ids are the
    /// caller's ordering (ascending positions for attractors).
    pub sets: Vec<Bits>,
    /// Per element: (lowest, highest) candidate id covering it. Any cover
    /// hits each element inside its span, so pairwise disjoint spans of
    /// uncovered elements lower-bound the remaining cover size.
    spans: Vec<(u32, u32)>,
    /// Element ids ordered by ascending span high end, for greedy packing.
    span_order: Vec<u32>,
}

impl CoverInstance {
    pub(crate) fn new(elements: usize, sets: Vec<Bits>) -> Self {
        let mut spans = vec![(u32::MAX, 0u32); elements];
        for (id, set) in sets.iter().enumerate() {
            for (w, word) in set.iter().enumerate() {
                let mut bits = *word;
                while bits != 0 {
                    let e = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let span = &mut spans[e];
                    span.0 = span.0.min(id as u32);
                    span.1 = span.1.max(id as u32);
                }
            }
        }
        let mut span_order: Vec<u32> = (0..elements as u32).collect();
        span_order.sort_by_key(|&e| spans[e as usize].1);
        CoverInstance {
            elements,
            sets,
            spans,
            span_order,
        }
    }

    fn full_bits(&self) -> Bits {
        let mut all = bits_new(self.elements);
        for e in 0..self.elements {
            bit_set(&mut all, e);
        }
        all
    }

    /// Greedy packing of uncovered elements with pairwise disjoint candidate
    /// spans; each needs its own set. Early-exits once the bound exceeds
    /// `cap`.
    fn span_packing_bound(&self, covered: &[u64], cap: usize) -> usize {
        let mut last: i64 = -1;
        let mut count = 0usize;
        for &e in &self.span_order {
            if bit_get(covered, e as usize) {
                continue;
            }
            let (lo, hi) = self.spans[e as usize];
            if lo as i64 > last {
                count += 1;
                if count > cap {
                    return count;
                }
                last = hi as i64;
            }
        }
        count
    }

    /// Deduplicates identical candidate sets (keeping the smallest id) and,
    /// when `dominance` is set, drops candidates whose coverage is contained
    /// in another candidate's.
    fn reduce(&self, dominance: bool) -> Reduced {
        use std::collections::HashMap;
        let mut seen: HashMap<&[u64], usize> = HashMap::new();
        let mut ids: Vec<usize> = Vec::new();
        for (id, set) in self.sets.iter().enumerate() {
            if count_ones(set) == 0 {
                continue;
            }
            if !seen.contains_key(set.as_slice()) {
                seen.insert(set.as_slice(), id);
                ids.push(id);
            }
        }
        if dominance {
            let mut order = ids.clone();
            order.sort_by_key(|&id| std::cmp::Reverse(count_ones(&self.sets[id])));
            let mut kept: Vec<usize> = Vec::new();
            for id in order {
                let dominated = kept
                    .iter()
                    .any(|&k| is_subset(&self.sets[id], &self.sets[k]));
                if !dominated {
                    kept.push(id);
                }
            }
            kept.sort_unstable();
            ids = kept;
        }
        let mut covers: Vec<Vec<u32>> = vec![Vec::new(); self.elements];
        for (slot, &id) in ids.iter().enumerate() {
            let set = &self.sets[id];
            for e in 0..self.elements {
                if bit_get(set, e) {
                    covers[e].push(slot as u32);
                }
            }
        }
        let mut element_order: Vec<u32> = (0..self.elements as u32).collect();
        element_order.sort_by_key(|&e| (covers[e as usize].len(), self.spans[e as usize].1));
        let max_set_size = ids
            .iter()
            .map(|&id| count_ones(&self.sets[id]))
            .max()
            .unwrap_or(0);
        Reduced {
            ids,
            covers,
            element_order,
            max_set_size,
        }
    }
}

struct Reduced {
    /// Kept candidate ids, ascending.
    ids: Vec<usize>,
    /// Per element: indices into `ids` of the candidates covering it.
    covers: Vec<Vec<u32>>,
    /// Elements in ascending cover-degree order.
    element_order: Vec<u32>,
    max_set_size: usize,
}

/// Greedy cover: repeatedly picks the candidate covering the most uncovered
/// elements (smallest id on ties), then drops members made redundant by
/// later picks. Returns candidate ids.
pub(crate) fn greedy_cover(inst: &CoverInstance) -> Vec<usize> {
    let all = inst.full_bits();
    let mut covered = bits_new(inst.elements);
    let mut chosen: Vec<usize> = Vec::new();
    while covered != all {
        let mut best = usize::MAX;
        let mut best_gain = 0;
        for (id, set) in inst.sets.iter().enumerate() {
            let gain = count_new(set, &covered);
            if gain > best_gain {
                best_gain = gain;
                best = id;
            }
        }
        assert!(best != usize::MAX, "uncoverable element in instance");
        for (w, s) in covered.iter_mut().zip(&inst.sets[best]) {
            *w |= s;
        }
        chosen.push(best);
    }
    // Redundancy pass: remove any member whose elements are covered by the
    // rest.
    let mut k = 0;
    while k < chosen.len() {
        let mut rest = bits_new(inst.elements);
        for (i, &id) in chosen.iter().enumerate() {
            if i != k {
                for (w, s) in rest.iter_mut().zip(&inst.sets[id]) {
                    *w |= s;
                }
            }
        }
        if rest == all {
            chosen.remove(k);
        } else {
            k += 1;
        }
    }
    chosen
}

struct Dfs<'a> {
    inst: &'a CoverInstance,
    red: &'a Reduced,
}

/// Fractional lower bound on the residual cover size by greedy dual ascent
/// in the given element order: each uncovered element raises its dual by
/// the minimum slack among its usable candidates; every feasible dual sum
/// bounds the LP and hence the integral optimum from below. Banned
/// candidates impose no constraint, which only strengthens the bound in
/// their subtree. Returns infinity when some element has no usable
/// candidate. Span order (earliest window end first) works best here.
fn dual_bound(
    red: &Reduced,
    order: &[u32],
    covered: &[u64],
    banned: &[u64],
    slack: &mut [f64],
) -> f64 {
    slack.fill(1.0);
    let mut total = 0f64;
    for &e in order {
        if bit_get(covered, e as usize) {
            continue;
        }
        let mut m = f64::INFINITY;
        for &slot in &red.covers[e as usize] {
            if !bit_get(banned, slot as usize) {
                m = m.min(slack[slot as usize]);
            }
        }
        if m == f64::INFINITY {
            return f64::INFINITY;
        }
        if m > 0.0 {
            total += m;
            for &slot in &red.covers[e as usize] {
                if !bit_get(banned, slot as usize) {
                    slack[slot as usize] -= m;
                }
            }
        }
    }
    total
}

impl Dfs<'_> {
    /// Is there a cover using at most `slots` of the reduced candidates?
    /// Fills `chosen` with reduced-slot indices when successful.
    ///
    /// Branches on the uncovered element whose candidate span ends first and
    /// tries its candidates rightmost-first, so the first descent follows
    /// the greedy interval-stabbing cover.
    /// `banned` partitions the space: when an element's i-th candidate is
    /// tried, the earlier ones are excluded from that subtree, so no cover
    /// is explored twice.
    fn find(
        &self,
        covered: &mut Bits,
        uncovered: usize,
        slots: usize,
        chosen: &mut Vec<u32>,
        slack: &mut Vec<f64>,
        banned: &mut Bits,
    ) -> bool {
        if uncovered == 0 {
            return true;
        }
        if slots == 0 || slots * self.red.max_set_size < uncovered {
            return false;
        }
        if self.inst.span_packing_bound(covered, slots) > slots {
            return false;
        }
        // The two ascent orders prune different subtrees; try both.
        if dual_bound(self.red, &self.inst.span_order, covered, banned, slack)
            > slots as f64 + 1e-9
        {
            return false;
        }
        if dual_bound(self.red, &self.red.element_order, covered, banned, slack)
            > slots as f64 + 1e-9
        {
            return false;
        }
        // Branch on the uncovered element with the fewest non-banned
        // candidates; zero candidates prunes, one is a forced choice.
        let mut branch = u32::MAX;
        let mut branch_options = usize::MAX;
        for &e in &self.red.element_order {
            if bit_get(covered, e as usize) {
                continue;
            }
            let mut count = 0usize;
            for &slot in &self.red.covers[e as usize] {
                if !bit_get(banned, slot as usize) {
                    count += 1;
                    if count >= branch_options {
                        break;
                    }
                }
            }
            if count == 0 {
                return false;
            }
            if count < branch_options {
                branch_options = count;
                branch = e;
                if count == 1 {
                    break;
                }
            }
        }
        // Try high-gain candidates first; descents then mimic greedy covers.
        let mut options: Vec<(usize, u32)> = self.red.covers[branch as usize]
            .iter()
            .filter_map(|&slot| {
                if bit_get(banned, slot as usize) {
                    return None;
                }
                let set = &self.inst.sets[self.red.ids[slot as usize]];
                Some((count_new(set, covered), slot))
            })
            .collect();
        options.sort_by_key(|&(gain, slot)| (std::cmp::Reverse(gain), slot));
        for &(gain, slot) in &options {
            let set = &self.inst.sets[self.red.ids[slot as usize]];
            let saved = covered.clone();
            for (w, s) in covered.iter_mut().zip(set) {
                *w |= s;
            }
            chosen.push(slot);
            if self.find(covered, uncovered - gain, slots - 1, chosen, slack, banned) {
                return true;
            }
            chosen.pop();
            covered.copy_from_slice(&saved);
            bit_set(banned, slot as usize);
        }
        for &(_, slot) in &options {
            banned[slot as usize / 64] &= !(1u64 << (slot % 64));
        }
        false
    }
}

pub(crate) struct CoverOutcome {
    pub size: usize,
    /// A witness cover (candidate ids, ascending); not necessarily the
    /// lexicographically smallest one.
    pub witness: Vec<usize>,
}

/// Exact minimum cover size, searching downward from the greedy incumbent
/// (and any caller-provided cover): each round asks for a strictly smaller
/// cover, so exactly one exhaustive failing search proves optimality.
///
/// `floor` is an external lower bound (the alphabet size for attractors).
/// With `budget`, fails once the optimum provably exceeds it.
pub(crate) fn minimum_cover(
    inst: &CoverInstance,
    floor: usize,
    seed: Option<Vec<usize>>,
    budget: Option<usize>,
) -> Result<CoverOutcome> {
    let mut incumbent = greedy_cover(inst);
    if let Some(seed) = seed {
        if seed.len() < incumbent.len() {
            incumbent = seed;
        }
    }
    // Subset-dominance pruning pays off only for deep searches.
    let red = inst.reduce(incumbent.len() >= 7 && inst.sets.len() <= 4500);
    let none = bits_new(inst.elements);
    let no_bans = bits_new(red.ids.len());
    let mut slack = vec![1.0f64; red.ids.len()];
    let root_dual = dual_bound(&red, &inst.span_order, &none, &no_bans, &mut slack);
    let lb = floor
        .max(inst.span_packing_bound(&none, inst.sets.len()))
        .max((root_dual - 1e-9).ceil() as usize);
    if let Some(b) = budget {
        if lb > b {
            return Err(Error::BudgetExceeded { budget: b });
        }
    }
    let dfs = Dfs { inst, red: &red };
    let mut try_size = |k: usize| -> Option<Vec<usize>> {
        let mut covered = bits_new(inst.elements);
        let mut chosen = Vec::new();
        let mut slack = vec![1.0f64; red.ids.len()];
        let mut banned = bits_new(red.ids.len());
        dfs.find(
            &mut covered,
            inst.elements,
            k,
            &mut chosen,
            &mut slack,
            &mut banned,
        )
        .then(|| chosen.iter().map(|&s| red.ids[s as usize]).collect())
    };
    if let Some(b) = budget {
        // Decide feasibility at the budget first; a failed search is the
        // proof that the optimum exceeds it.
        if incumbent.len() > b {
            match try_size(b) {
                Some(found) => incumbent = found,
                None => return Err(Error::BudgetExceeded { budget: b }),
            }
        }
    }
    while incumbent.len() > lb {
        match try_size(incumbent.len() - 1) {
            Some(found) => incumbent = found,
            None => break,
        }
    }
    incumbent.sort_unstable();
    Ok(CoverOutcome {
        size: incumbent.len(),
        witness: incumbent,
    })
}

/// Lexicographically smallest cover of size exactly `k` (as a sorted tuple
/// of candidate ids). `k` must be the exact minimum cover size.
pub(crate) fn lex_smallest_cover(inst: &CoverInstance, k: usize) -> Vec<usize> {
    // Deduplicate identical columns keeping the smallest id: replacing a
    // member by an identical smaller-id candidate only improves the tuple.
    let red = inst.reduce(false);
    // Per element, the largest candidate id that can still cover it.
    let max_cover: Vec<usize> = (0..inst.elements)
        .map(|e| {
            red.covers[e]
                .last()
                .map(|&s| red.ids[s as usize])
                .expect("coverable element")
        })
        .collect();
    let mut chosen = Vec::new();
    let mut covered = bits_new(inst.elements);
    let mut slack = vec![1.0f64; red.ids.len()];
    let no_bans = bits_new(red.ids.len());
    let found = lex_dfs(
        inst,
        &red,
        &max_cover,
        &mut covered,
        inst.elements,
        k,
        0,
        &mut chosen,
        &mut slack,
        &no_bans,
    );
    assert!(found, "no cover of size {k}; caller must pass the optimum");
    chosen
}

#[allow(clippy::too_many_arguments)]
fn lex_dfs(
    inst: &CoverInstance,
    red: &Reduced,
    max_cover: &[usize],
    covered: &mut Bits,
    uncovered: usize,
    slots: usize,
    min_id: usize,
    chosen: &mut Vec<usize>,
    slack: &mut Vec<f64>,
    no_bans: &Bits,
) -> bool {
    if uncovered == 0 {
        return true;
    }
    if slots == 0 || slots * red.max_set_size < uncovered {
        return false;
    }
    if inst.span_packing_bound(covered, slots) > slots {
        return false;
    }
    if dual_bound(red, &inst.span_order, covered, no_bans, slack) > slots as f64 + 1e-9 {
        return false;
    }
    // The next id may not exceed the reach of any still-uncovered element.
    let mut limit = usize::MAX;
    for &e in &red.element_order {
        if !bit_get(covered, e as usize) {
            limit = limit.min(max_cover[e as usize]);
        }
    }
    for &id in red.ids.iter() {
        if id < min_id {
            continue;
        }
        if id > limit {
            break;
        }
        let set = &inst.sets[id];
        let gain = count_new(set, covered);
        if gain == 0 {
            continue;
        }
        let saved = covered.clone();
        for (w, s) in covered.iter_mut().zip(set) {
            *w |= s;
        }
        chosen.push(id);
        if lex_dfs(
            inst,
            red,
            max_cover,
            covered,
            uncovered - gain,
            slots - 1,
            id + 1,
            chosen,
            slack,
            no_bans,
        ) {
            return true;
        }
        chosen.pop();
        covered.copy_from_slice(&saved);
    }
    false
}


#[doc(hidden)]
pub(crate) fn diagnostics(inst: &CoverInstance) -> crate::attractor::CoverDiagnostics {
    let none = bits_new(inst.elements);
    let red = inst.reduce(false);
    let no_bans = bits_new(red.ids.len());
    let mut slack = vec![1.0f64; red.ids.len()];
    crate::attractor::CoverDiagnostics {
        candidates: inst.sets.len(),
        elements: inst.elements,
        greedy: greedy_cover(inst).len(),
        lb_span: inst.span_packing_bound(&none, usize::MAX),
        lb_union: (dual_bound(&red, &inst.span_order, &none, &no_bans, &mut slack) - 1e-9).ceil() as usize,
    }
}

#[doc(hidden)]
pub(crate) fn trace_minimum(inst: &CoverInstance, floor: usize) {
    use std::time::Instant;
    let mut incumbent = greedy_cover(inst);
    let red = inst.reduce(true);
    let none = bits_new(inst.elements);
    let no_bans = bits_new(red.ids.len());
    let mut slack = vec![1.0f64; red.ids.len()];
    let root_dual = dual_bound(&red, &inst.span_order, &none, &no_bans, &mut slack);
    let lb = floor
        .max(inst.span_packing_bound(&none, inst.sets.len()))
        .max((root_dual - 1e-9).ceil() as usize);
    eprintln!(
        "  greedy={} lb={lb} (dual {root_dual:.2}), reduced candidates {} of {}",
        incumbent.len(),
        red.ids.len(),
        inst.sets.len()
    );
    let dfs = Dfs { inst, red: &red };
    while incumbent.len() > lb {
        let k = incumbent.len() - 1;
        let t = Instant::now();
        let mut covered = bits_new(inst.elements);
        let mut chosen = Vec::new();
        let mut slack = vec![1.0f64; red.ids.len()];
        let mut banned = bits_new(red.ids.len());
        let ok = dfs.find(&mut covered, inst.elements, k, &mut chosen, &mut slack, &mut banned);
        eprintln!("  try k={k}: {} in {:?}", if ok { "found" } else { "exhausted" }, t.elapsed());
        if ok {
            incumbent = chosen.iter().map(|&s| red.ids[s as usize]).collect();
        } else {
            break;
        }
    }
    eprintln!("  optimum = {}", incumbent.len());
}
