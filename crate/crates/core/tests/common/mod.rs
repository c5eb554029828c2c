#![allow(dead_code)]

use tornzeta::closed_form::closed_form;
use tornzeta::exact::Rat;
use tornzeta::harness::SuiteManifest;
use tornzeta::numeric::consts::zx_numeric_prec;
use tornzeta::numeric::sum::{diagonal_partial, diagonal_partials, raw_partial, Region};
use tornzeta::numeric::tail::raw_tail_bound;
use tornzeta::numeric::{prec_for_digits, tail_estimate, BigFl};
use tornzeta::{emit, run_suite, Format, HalfVariant, NumericCfg, SeriesSpec};

// Reference values, 34 digits, computed independently with mpmath.
pub const ZETA2: &str = "1.6449340668482264364724151666460252";
pub const ZETA3: &str = "1.2020569031595942853997381615114500";
pub const ZETA4: &str = "1.0823232337111381915160036965411679";
pub const ZETA5: &str = "1.0369277551433699263313654864570342";
pub const PI: &str = "3.1415926535897932384626433832795029";
pub const LN2: &str = "0.69314718055994530941723212145817657";
pub const SIX_ZETA4: &str = "6.4939394022668291490960221792470074";
pub const PI4_OVER_16: &str = "6.0880681896251523272775207930440695";
pub const TWO_ZETA3: &str = "2.4041138063191885707994763230229000";
pub const TWENTYFOUR_ZETA5: &str = "24.886266123440878231952771674968820";
pub const LN_SERIES: &str = "0.96877157203188294469312059043762167";
pub const ON_SERIES: &str = "0.41123351671205660911810379166150630";
pub const HALFINT_A: &str = "9.4901484253373029879623084051761032";
pub const HALFINT_B: &str = "3.6693241094485085038170129279920984";
pub const HALFINT_C: &str = "5.8208243158887944841452954771840048";
pub const T2: &str = "1.0517997902646449997247708913225187";
pub const T3: &str = "0.82246703342411321823620758332301259";
pub const B_INTER: &str = "0.17753296657588678176379241667698741";
pub const ONE_MINUS_LN2: &str = "0.30685281944005469058276787854182343";
pub const ODD_SQUARES: &str = "1.2337005501361698273543113749845189";
/// Fifth-order case at s = 3 by adaptive quadrature.
pub const A5_3: &str = "116.41460905349794238683127572016461";
/// Tornheim values from the known reductions `S(1,1,2) = zeta(4)/2` and
/// `S(2,1,1) = 5 zeta(4)/4`.
pub const TORNHEIM_112: &str = "0.54116161685556909575800184827058395";
pub const TORNHEIM_211: &str = "1.3529040421389227393950046206764599";

pub const DIGITS: u32 = 50;

pub fn prec() -> u32 {
    prec_for_digits(DIGITS)
}

pub fn reference(s: &str) -> BigFl {
    BigFl::parse_decimal(s, prec()).expect("reference literal")
}

pub fn abs_diff(x: &BigFl, reference_text: &str) -> f64 {
    (x - &reference(reference_text)).abs().to_f64()
}

pub fn closed_numeric(spec: &SeriesSpec) -> BigFl {
    zx_numeric_prec(&closed_form(spec).unwrap(), prec())
}

/// Every family with a reduced form, with the exact-check cutoff.
pub fn reduced_specs() -> Vec<(SeriesSpec, u64)> {
    let mut v = Vec::new();
    for s in [0, 1, 2, 5, 20] {
        v.push((SeriesSpec::A3 { s }, 50));
    }
    for (n, s, d) in [(2, 0, 50), (2, 3, 50), (3, 1, 50), (4, 0, 40), (5, 2, 25), (6, 0, 18), (6, 3, 18)] {
        v.push((SeriesSpec::An { n, s }, d));
    }
    for k in [0, 1, 3, 10] {
        v.push((SeriesSpec::AXl { k }, 50));
    }
    for spec in [
        SeriesSpec::S111,
        SeriesSpec::LnSeries,
        SeriesSpec::OnSeries,
        SeriesSpec::EvenOddAux,
        SeriesSpec::OddSquares,
        SeriesSpec::BInter,
        SeriesSpec::BaseT(1),
        SeriesSpec::BaseT(2),
        SeriesSpec::BaseT(3),
    ] {
        v.push((spec, 50));
    }
    for h in HalfVariant::ALL {
        v.push((SeriesSpec::HalfInt(h), 50));
    }
    v
}

/// Specs whose exact diagonal partial differs from the raw partial over
/// the matching simplex.
pub fn reduction_mismatches() -> Vec<String> {
    reduced_specs()
        .into_iter()
        .filter_map(|(spec, d)| {
            let diag = diagonal_partial::<Rat>(&spec, d, ()).unwrap();
            let raw = raw_partial::<Rat>(&spec, Region::Simplex(d), ()).unwrap();
            (diag != raw).then(|| format!("{spec} at D={d}: diagonal {diag} raw {raw}"))
        })
        .collect()
}

/// Families checked for tail honesty on the diagonal route.
pub fn diagonal_tail_specs() -> Vec<SeriesSpec> {
    let mut v = vec![
        SeriesSpec::A3 { s: 0 },
        SeriesSpec::A3 { s: 3 },
        SeriesSpec::An { n: 2, s: 0 },
        SeriesSpec::An { n: 4, s: 0 },
        SeriesSpec::An { n: 5, s: 2 },
        SeriesSpec::An { n: 6, s: 3 },
        SeriesSpec::AXl { k: 0 },
        SeriesSpec::AXl { k: 4 },
        SeriesSpec::S111,
        SeriesSpec::LnSeries,
        SeriesSpec::OnSeries,
        SeriesSpec::EvenOddAux,
        SeriesSpec::OddSquares,
        SeriesSpec::BInter,
    ];
    v.extend((1..=3).map(SeriesSpec::BaseT));
    v.extend(HalfVariant::ALL.map(SeriesSpec::HalfInt));
    v
}

/// `(spec, N)` pairs where the true remainder is negative or exceeds the
/// tail bound at a diagonal cutoff `N`.
pub fn diagonal_tail_violations(checkpoints: &[u64]) -> Vec<String> {
    let p = prec();
    let mut bad = Vec::new();
    for spec in diagonal_tail_specs() {
        let exact = closed_numeric(&spec);
        let partials = diagonal_partials::<BigFl>(&spec, checkpoints, p).unwrap();
        for (&n, s) in checkpoints.iter().zip(&partials) {
            let rem = &exact - s;
            let bound = tail_estimate(&spec, n, p).unwrap().expect("diagonal bound");
            if rem.is_negative() || rem > bound {
                bad.push(format!(
                    "{spec} N={n}: remainder {} bound {}",
                    rem.to_decimal_string(6),
                    bound.to_decimal_string(6)
                ));
            }
        }
    }
    bad
}

/// Two-index families with their exact value, for raw-box checks.
pub fn raw_specs() -> Vec<(SeriesSpec, BigFl)> {
    let mut v: Vec<(SeriesSpec, BigFl)> = [
        SeriesSpec::A3 { s: 0 },
        SeriesSpec::A3 { s: 2 },
        SeriesSpec::S111,
        SeriesSpec::BaseT(1),
        SeriesSpec::BaseT(2),
        SeriesSpec::BaseT(3),
        SeriesSpec::BInter,
    ]
    .into_iter()
    .chain(HalfVariant::ALL.map(SeriesSpec::HalfInt))
    .map(|s| (s, closed_numeric(&s)))
    .collect();
    v.push((SeriesSpec::TornheimRaw { a: 1, b: 1, c: 2 }, reference(TORNHEIM_112)));
    v.push((SeriesSpec::TornheimRaw { a: 2, b: 1, c: 1 }, reference(TORNHEIM_211)));
    v
}

/// Raw boxes of side `n` whose remainder is negative or above the bound.
pub fn raw_tail_violations(n: u64) -> Vec<String> {
    let p = prec();
    let mut bad = Vec::new();
    for (spec, exact) in raw_specs() {
        let s = raw_partial::<BigFl>(&spec, Region::Box(n), p).unwrap();
        let rem = &exact - &s;
        let bound = raw_tail_bound(&spec, n, p).unwrap().expect("two-index bound");
        if rem.is_negative() || rem > bound {
            bad.push(format!(
                "{spec} N={n}: remainder {} bound {}",
                rem.to_decimal_string(6),
                bound.to_decimal_string(6)
            ));
        }
    }
    bad
}

/// Specs whose diagonal partial sums at `1..=upto` fail to increase
/// strictly or overshoot the exact value.
pub fn monotone_violations(upto: u64) -> Vec<String> {
    let p = prec();
    let slack = BigFl::from_f64(10f64.powi(-(DIGITS as i32) + 5), p);
    let checkpoints: Vec<u64> = (1..=upto).collect();
    let mut bad = Vec::new();
    for spec in diagonal_tail_specs() {
        let cap = &closed_numeric(&spec) + &slack;
        let partials = diagonal_partials::<BigFl>(&spec, &checkpoints, p).unwrap();
        // Leading zeros stand for cutoffs below the first index.
        let live: Vec<&BigFl> = partials.iter().skip_while(|x| x.is_zero()).collect();
        if live.windows(2).any(|w| w[1] <= w[0]) {
            bad.push(format!("{spec}: not strictly increasing"));
        }
        if live.last().is_some_and(|x| **x > cap) {
            bad.push(format!("{spec}: partial sum exceeds the exact value"));
        }
    }
    bad
}

fn cheap_cfg() -> NumericCfg {
    NumericCfg::default()
}

/// Report bytes of the smoke suite, once in parallel and once sequentially.
pub fn smoke_bytes(format: Format) -> (Vec<u8>, Vec<u8>) {
    let m = SuiteManifest::smoke(&cheap_cfg());
    let mut a = Vec::new();
    let mut b = Vec::new();
    emit(&run_suite(&m, true).unwrap().reports, format, &mut a).unwrap();
    emit(&run_suite(&m, false).unwrap().reports, format, &mut b).unwrap();
    (a, b)
}
