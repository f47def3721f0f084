use rand::Rng;

use crate::grounding::ActionId;

use super::individual::{Individual, LengthBounds};
use super::recorder::ConflictRecorder;

/// Index drawn proportionally to `weights`; uniform if they sum to zero.
pub(crate) fn weighted_index<R: Rng>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return rng.gen_range(0..weights.len());
    }
    let mut r = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if r < *w {
            return i;
        }
        r -= w;
    }
    // rounding left r at or past the last positive weight
    weights
        .iter()
        .rposition(|w| *w > 0.0)
        .unwrap_or(weights.len() - 1)
}

/// Union of both gene lists, first-seen order.
pub fn union_genes(a: &Individual, b: &Individual) -> Vec<ActionId> {
    let mut out = a.genes.clone();
    for &g in &b.genes {
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Offspring of `xi` and `xj`: `k` genes drawn without replacement from the
/// union, weighted by the sampling distribution and renormalized after each
/// draw. Dropped critical actions are re-added, then non-critical genes are
/// trimmed from the end while the offspring is longer than `bounds.hi`.
pub fn crossover<R: Rng>(
    xi: &Individual,
    xj: &Individual,
    recorder: &ConflictRecorder,
    critical: &[ActionId],
    bounds: LengthBounds,
    rng: &mut R,
) -> Individual {
    let union = union_genes(xi, xj);
    let (lo, hi) = (xi.len().min(xj.len()), xi.len().max(xj.len()));
    let k = rng.gen_range(lo..=hi).min(union.len());

    let dist = recorder.sampling_distribution(&union);
    let mut pool: Vec<(ActionId, f64)> = dist;
    let mut genes = Vec::with_capacity(k);
    for _ in 0..k {
        let weights: Vec<f64> = pool.iter().map(|(_, p)| *p).collect();
        let idx = weighted_index(&weights, rng);
        genes.push(pool.remove(idx).0);
    }
    for &c in critical {
        if !genes.contains(&c) {
            genes.push(c);
        }
    }
    while genes.len() > bounds.hi {
        match genes.iter().rposition(|g| !critical.contains(g)) {
            Some(pos) => {
                genes.remove(pos);
            }
            None => break,
        }
    }
    Individual::new(genes)
}

/// With probability `p_mut`, appends one action outside `union`, drawn
/// proportionally to its summed weight against the current genes. Skipped
/// when `x` is already at `bounds.hi`.
pub fn mutate<R: Rng>(
    x: &Individual,
    action_count: usize,
    union: &[ActionId],
    recorder: &ConflictRecorder,
    p_mut: f64,
    bounds: LengthBounds,
    rng: &mut R,
) -> Individual {
    if x.len() >= bounds.hi || !rng.gen_bool(p_mut.clamp(0.0, 1.0)) {
        return x.clone();
    }
    let candidates: Vec<ActionId> = (0..action_count).filter(|a| !union.contains(a)).collect();
    if candidates.is_empty() {
        return x.clone();
    }
    let weights: Vec<f64> = candidates
        .iter()
        .map(|&a| recorder.compatibility_weight(a, &x.genes))
        .collect();
    let mut out = x.clone();
    out.genes.push(candidates[weighted_index(&weights, rng)]);
    out
}
