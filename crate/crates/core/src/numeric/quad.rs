//! Tanh-sinh quadrature on (0, 1).
//!
//! Nodes use the logistic form `t = 1/(1 + exp(-u))`, `u = pi sinh(tau)`,
//! so both `t` and `1 - t` (and their logarithms) are available without
//! cancellation near either endpoint. Nodes are cached per precision and
//! level; level `l` uses step `2^-l` and only adds the odd multiples.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::elementary::{exp, ln1p, pi, sinh_cosh};
use super::BigFl;
use crate::field::Accumulator;

/// First level at which successive estimates are compared.
pub const MIN_LEVEL: u32 = 3;

/// Growth allowance at the endpoints: integrands may grow like `|ln t|^12`.
const ENDPOINT_LOG_POWER: f64 = 12.0;

/// Evaluation point handed to the integrand.
#[derive(Clone, Copy, Debug)]
pub struct QuadPoint<'a> {
    pub t: &'a BigFl,
    /// `1 - t`, accurate near `t = 1`.
    pub omt: &'a BigFl,
    pub ln_t: &'a BigFl,
    pub ln_omt: &'a BigFl,
}

#[derive(Debug)]
struct Node {
    t: BigFl,
    omt: BigFl,
    ln_t: BigFl,
    ln_omt: BigFl,
    w: BigFl,
    mirrored: bool,
}

impl Node {
    fn points(&self) -> impl Iterator<Item = QuadPoint<'_>> {
        let pos = QuadPoint { t: &self.t, omt: &self.omt, ln_t: &self.ln_t, ln_omt: &self.ln_omt };
        let neg = QuadPoint { t: &self.omt, omt: &self.t, ln_t: &self.ln_omt, ln_omt: &self.ln_t };
        std::iter::once(pos).chain(self.mirrored.then_some(neg))
    }
}

#[derive(Clone, Debug)]
pub struct QuadOutcome {
    pub value: BigFl,
    /// `|I_l - I_{l-1}|` at the final level.
    pub error: BigFl,
    pub levels_used: u32,
    /// Level differences `|I_l - I_{l-1}|` for `l = 1..=levels_used`.
    pub history: Vec<BigFl>,
    pub converged: bool,
}

/// Largest `tau` whose node can still contribute above `2^-(prec+16)`.
fn tau_max(prec: u32) -> f64 {
    let floor = -(prec as f64 + 16.0);
    let mut tau: f64 = 0.5;
    loop {
        let u = std::f64::consts::PI * tau.sinh();
        let log2_w = (std::f64::consts::PI * tau.cosh()).log2() - u * std::f64::consts::LOG2_E;
        let growth = ENDPOINT_LOG_POWER * u.max(1.0).log2();
        if log2_w + growth < floor {
            return tau;
        }
        tau += 1.0 / 64.0;
    }
}

fn make_node(tau: &BigFl, prec: u32) -> Node {
    let pi = pi(prec);
    let (sh, ch) = sinh_cosh(tau);
    let u = &pi * &sh;
    let e = exp(&-&u);
    let one = BigFl::one(prec);
    let denom = &one + &e;
    let t = &one / &denom;
    let omt = &e / &denom;
    let l1p = ln1p(&e);
    let ln_t = -&l1p;
    let ln_omt = &(-&u) - &l1p;
    let w = &(&(&pi * &ch) * &t) * &omt;
    Node { t, omt, ln_t, ln_omt, w, mirrored: !tau.is_zero() }
}

fn level_nodes(prec: u32, level: u32) -> Arc<Vec<Node>> {
    type NodeCache = Mutex<HashMap<(u32, u32), Arc<Vec<Node>>>>;
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&(prec, level)) {
        return v.clone();
    }
    let tmax = tau_max(prec);
    let scale = (1u64 << level) as f64;
    let (start, step) = if level == 0 { (0u64, 1u64) } else { (1, 2) };
    let mut nodes = Vec::new();
    let mut i = start;
    while (i as f64) / scale <= tmax {
        let tau = BigFl::from_u64(i, prec).ldexp(-(level as i64));
        nodes.push(make_node(&tau, prec));
        i += step;
    }
    let v = Arc::new(nodes);
    cache.lock().unwrap_or_else(|e| e.into_inner()).entry((prec, level)).or_insert(v).clone()
}

/// Integrates `f` over (0, 1), refining until two successive levels agree to
/// `target_bits` relative bits or `max_level` is reached.
pub fn tanh_sinh<F>(f: F, prec: u32, max_level: u32, target_bits: u32) -> QuadOutcome
where
    F: Fn(&QuadPoint) -> BigFl,
{
    let mut sum = Accumulator::<BigFl>::new(prec);
    let mut prev: Option<BigFl> = None;
    let mut history = Vec::new();
    for level in 0..=max_level {
        for node in level_nodes(prec, level).iter() {
            for p in node.points() {
                sum.push(&(&node.w * &f(&p)));
            }
        }
        let estimate = sum.total().ldexp(-(level as i64));
        if let Some(p) = &prev {
            let last_diff = (&estimate - p).abs();
            history.push(last_diff.clone());
            if level >= MIN_LEVEL {
                let ok = last_diff.is_zero()
                    || (!estimate.is_zero() && last_diff.top_bit() < estimate.top_bit() - target_bits as i64);
                if ok {
                    return QuadOutcome {
                        value: estimate,
                        error: last_diff,
                        levels_used: level,
                        history,
                        converged: true,
                    };
                }
            }
        }
        prev = Some(estimate);
    }
    QuadOutcome {
        value: prev.unwrap_or_else(|| BigFl::zero(prec)),
        error: history.last().cloned().unwrap_or_else(|| BigFl::zero(prec)),
        levels_used: max_level,
        history,
        converged: false,
    }
}
