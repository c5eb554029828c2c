//! Partial sums in fixed ascending order, and midpoint Euler–Maclaurin
//! estimates of the remaining tails.

use super::family::{diagonal_real, diagonal_terms, raw_real2, raw_symmetric, raw_term};
use super::quad::tanh_sinh;
use super::BigFl;
use crate::error::{Error, Result};
use crate::exact::HarmonicTable;
use crate::field::{Accumulator, Field};
use crate::spec::SeriesSpec;

/// Refuses raw sums with more terms than this.
pub const RAW_TERM_LIMIT: u128 = 100_000_000;

/// Precision of the strip tails in the two-index acceleration.
const STRIP_PREC: u32 = 128;
const STRIP_TARGET_BITS: u32 = 64;
/// The corner nests one tail inside another; the inner one must be more
/// accurate than the outer level test demands.
const CORNER_INNER_BITS: u32 = 64;
const CORNER_OUTER_BITS: u32 = 40;
const TAIL_MAX_LEVEL: u32 = 12;

/// Index set of a raw partial sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Every index in `[start, n]`.
    Box(u64),
    /// Indices `>= start` whose sum is at most `n`; matches the reduced
    /// form truncated at `n`.
    Simplex(u64),
}

/// `sum_{N = first}^{cutoff}` of the reduced summands.
pub fn diagonal_partial<S: Field + 'static>(spec: &SeriesSpec, cutoff: u64, ctx: S::Ctx) -> Result<S>
where
    S::Ctx: 'static,
{
    Ok(diagonal_partials(spec, &[cutoff], ctx)?.pop().expect("one checkpoint"))
}

/// Reduced partial sums at each of the ascending `checkpoints`.
pub fn diagonal_partials<S: Field + 'static>(spec: &SeriesSpec, checkpoints: &[u64], ctx: S::Ctx) -> Result<Vec<S>>
where
    S::Ctx: 'static,
{
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("checkpoints must be ascending".into()));
    }
    let mut gen = diagonal_terms::<S>(spec, ctx)?;
    let mut acc = Accumulator::<S>::new(ctx);
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = gen.first;
    for &cp in checkpoints {
        while next <= cp {
            acc.push(&gen.next_term(next));
            next += 1;
        }
        out.push(acc.total());
    }
    Ok(out)
}

/// Number of terms in a raw region, `None` on overflow.
pub fn raw_term_count(spec: &SeriesSpec, region: Region) -> Option<u128> {
    let d = spec.dimension();
    let st = spec.index_start();
    match region {
        Region::Box(n) => {
            let side = (n + 1).checked_sub(st)? as u128;
            (0..d).try_fold(1u128, |acc, _| acc.checked_mul(side))
        }
        // Compositions of at most n into d parts >= st.
        Region::Simplex(n) => {
            let budget = n.checked_sub(st * d as u64)? as u128;
            let mut c: u128 = 1;
            for i in 1..=d as u128 {
                c = c.checked_mul(budget + i)? / i;
            }
            Some(c)
        }
    }
}

/// Raw partial sum in lexicographic index order.
pub fn raw_partial<S: Field>(spec: &SeriesSpec, region: Region, ctx: S::Ctx) -> Result<S> {
    spec.validate()?;
    let count = raw_term_count(spec, region).unwrap_or(0);
    if count > RAW_TERM_LIMIT {
        return Err(Error::Config(format!(
            "raw region {region:?} for {spec} has {count} terms, above the limit {RAW_TERM_LIMIT}"
        )));
    }
    let mut acc = Accumulator::<S>::new(ctx);
    if count == 0 {
        return Ok(acc.total());
    }
    let d = spec.dimension() as usize;
    let st = spec.index_start();
    let mut table = HarmonicTable::<S>::new(ctx);
    let mut idx = vec![st; d];
    let fits = |idx: &[u64]| match region {
        Region::Box(n) => idx.iter().all(|&i| i <= n),
        Region::Simplex(n) => idx.iter().sum::<u64>() <= n,
    };
    loop {
        acc.push(&raw_term(spec, &idx, &mut table, ctx));
        // Odometer step: bump the last index, carrying leftwards.
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(acc.total());
            }
            pos -= 1;
            idx[pos] += 1;
            if fits(&idx) {
                break;
            }
            idx[pos] = st;
        }
    }
}

/// Estimated value of a tail and the size of its leading neglected term.
#[derive(Clone, Debug)]
pub struct TailEstimate {
    pub value: BigFl,
    pub error: BigFl,
    pub converged: bool,
}

/// `sum_{k >= first} f(k)` by the midpoint Euler–Maclaurin formula
/// `int_{a}^inf f + f'(a)/24 - 7 f'''(a)/5760` with `a = first - 1/2`.
///
/// The integral is taken over `(0, 1)` after `x = a/t`; derivatives come
/// from central differences with step `1/4`, which needs `f` defined from
/// `first - 1` on.
pub fn em_tail(f: &dyn Fn(&BigFl) -> BigFl, first: u64, prec: u32, target_bits: u32) -> TailEstimate {
    let one = BigFl::one(prec);
    let a = &BigFl::from_u64(first, prec) - &one.ldexp(-1);
    let quad = tanh_sinh(
        |p| {
            let x = &a / p.t;
            &(&f(&x) * &a) / &p.t.square()
        },
        prec,
        TAIL_MAX_LEVEL,
        target_bits,
    );
    let step = |k: i64| f(&(&a + &BigFl::from_i64(k, prec).ldexp(-2)));
    let (fm2, fm1, fp1, fp2) = (step(-2), step(-1), step(1), step(2));
    // delta = 1/4: f' ~ (8(f1 - f-1) - (f2 - f-2)) / (12 delta),
    // f''' ~ (f2 - 2 f1 + 2 f-1 - f-2) / (2 delta^3).
    let d1 = (&(&fp1 - &fm1).mul_u128(8) - &(&fp2 - &fm2)).div_u128(3);
    let d3 = (&(&fp2 - &fp1.ldexp(1)) + &(&fm1.ldexp(1) - &fm2)).ldexp(5);
    let c3 = d3.mul_u128(7).div_u128(5760);
    let value = &(&quad.value + &d1.div_u128(24)) - &c3;
    TailEstimate { value, error: &c3.abs() + &quad.error, converged: quad.converged }
}

fn tail_failure(spec: &SeriesSpec) -> Error {
    Error::NoConvergence(format!("tail quadrature for {spec} did not converge"))
}

/// Tail of the reduced series beyond `cutoff`.
pub fn diagonal_tail_accel(spec: &SeriesSpec, cutoff: u64, prec: u32) -> Result<TailEstimate> {
    let f = diagonal_real(spec, prec)?;
    let t = em_tail(&*f, cutoff + 1, prec, prec.saturating_sub(40).max(64));
    if !t.converged {
        return Err(tail_failure(spec));
    }
    Ok(t)
}

/// Complement of the raw box `[start, n]^d`. One-index families reuse the
/// reduced tail; two-index families add row strips, column strips and the
/// corner. Higher-dimensional boxes are not supported.
pub fn raw_tail_accel(spec: &SeriesSpec, n: u64, prec: u32) -> Result<TailEstimate> {
    match spec.dimension() {
        1 => return diagonal_tail_accel(spec, n, prec),
        2 => {}
        d => {
            return Err(Error::Unsupported {
                method: format!("accelerated raw tail in dimension {d}"),
                spec: spec.to_string(),
            })
        }
    }
    let wp = STRIP_PREC;
    let f = raw_real2(spec, wp)?;
    let st = spec.index_start();
    let mut total = Accumulator::<BigFl>::new(wp);
    let mut err = BigFl::zero(wp);
    let mut strips = |swap: bool| -> Result<()> {
        for k in st..=n {
            let kf = BigFl::from_u64(k, wp);
            let g = |y: &BigFl| if swap { f(y, &kf) } else { f(&kf, y) };
            let t = em_tail(&g, n + 1, wp, STRIP_TARGET_BITS);
            if !t.converged {
                return Err(tail_failure(spec));
            }
            total.push(&t.value);
            err = &err + &t.error;
        }
        Ok(())
    };
    strips(false)?;
    if raw_symmetric(spec) {
        // Columns equal rows; add them again.
        let rows = total.total();
        total.push(&rows);
        err = err.ldexp(1);
    } else {
        strips(true)?;
    }
    let inner_failed = std::cell::Cell::new(false);
    // Past x = a 2^(outer bits + 20) the outer node weights (about a/x) are
    // far below the outer target, so an inner tail that cannot resolve its
    // kink near y = x does not matter there.
    let irrelevant_from = BigFl::from_u64(n + 1, wp).top_bit() + CORNER_OUTER_BITS as i64 + 20;
    let inner = |x: &BigFl| {
        let t = em_tail(&|y: &BigFl| f(x, y), n + 1, wp, CORNER_INNER_BITS);
        if !t.converged && x.top_bit() < irrelevant_from {
            inner_failed.set(true);
        }
        t.value
    };
    let corner = em_tail(&inner, n + 1, wp, CORNER_OUTER_BITS);
    if !corner.converged || inner_failed.get() {
        return Err(tail_failure(spec));
    }
    total.push(&corner.value);
    err = &err + &corner.error;
    Ok(TailEstimate { value: total.total().with_prec(prec), error: err.with_prec(prec), converged: true })
}
