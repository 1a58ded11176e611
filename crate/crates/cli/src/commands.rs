use serde::Serialize;
use serde_json::{json, Value};

use ps_lab::circle_method::{
    build_major_arcs, c_range, main_term, nu_of_k, osc_integral_i, osc_integral_j, two_t_table, v_approx, ArcParams,
    MainTermParams,
};
use ps_lab::expsums::{
    bound_experiment, ps_prime_sum_partitioned, shifted_poly_sum, vaaler_check, vaughan_decompose,
    weighted_prime_sum, weyl_sum_partitioned, BoundGrid, BoundLemma, Coefficients, ExpSumSample, Frac128, SumKind,
};
use ps_lab::local_arith::{
    euler_phi, gauss_bound_scan, gauss_power_sum, k_primes, modulus_k, s_m_of_q, s_m_of_q_direct,
    singular_series_partitioned, theta_gamma, von_mangoldt,
};
use ps_lab::ps_core::{delta_psi, enumerate_ps_partitioned, enumerate_ps_primes_partitioned, floor_neg_pow_delta};
use ps_lab::rational::parse_exact;
use ps_lab::repcount::{
    compare_to_main_term, count_representations_mitm, count_table, moment_count, quadrature_vs_count,
};
use ps_lab::{Error, PsParams};

use crate::args::*;
use crate::output::Report;

type Outcome = Result<Report, Error>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable result")
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn ps_params(c: &str, g: &Global) -> Result<PsParams, Error> {
    PsParams::new(c)?
        .with_precision(g.precision_bits, g.precision_bits.max(PsParams::DEFAULT_MAX_BITS))?
        .with_env_overrides()
}

/// Largest limit accepted by the enumeration-backed subcommands.
pub const MAX_LIMIT: u64 = 100_000_000;
/// Largest number of summands or grid evaluations for a single run.
pub const MAX_TERMS: u64 = 10_000_000_000;

fn budget(what: &str, value: u64, cap: u64) -> Result<(), Error> {
    if value > cap {
        return Err(Error::BudgetExceeded(format!("{what} = {value} exceeds {cap}")));
    }
    Ok(())
}

fn alpha(text: &str) -> Result<Frac128, Error> {
    Ok(Frac128::from_rational(&parse_exact(text)?))
}

/// `a,b,c` or `start:stop:step`.
pub fn parse_grid_f64(text: &str) -> Result<Vec<f64>, Error> {
    let bad = || invalid(format!("not a list or start:stop:step grid: {text:?}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (a, b, h) = (num(start)?, num(stop)?, num(step)?);
            if !(h > 0.0) || b < a {
                return Err(bad());
            }
            let count = ((b - a) / h + 1e-9).floor() as u64 + 1;
            if count > 10_000 {
                return Err(Error::GridTooLarge(format!("{count} grid points")));
            }
            Ok((0..count).map(|i| a + i as f64 * h).collect())
        }
        [_] => text.split(',').map(num).collect(),
        _ => Err(bad()),
    }
}

pub fn parse_grid_u64(text: &str) -> Result<Vec<u64>, Error> {
    let bad = || invalid(format!("not an integer list or start:stop:step grid: {text:?}"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (a, b, h) = (num(start)?, num(stop)?, num(step)?);
            if h == 0 || b < a {
                return Err(bad());
            }
            if (b - a) / h >= 10_000 {
                return Err(Error::GridTooLarge(format!("{} grid points", (b - a) / h + 1)));
            }
            Ok((a..=b).step_by(h as usize).collect())
        }
        [_] => text.split(',').map(num).collect(),
        _ => Err(bad()),
    }
}

pub fn run(cmd: &Command, g: &Global) -> Outcome {
    let parts = g.threads.max(1);
    match cmd {
        Command::PsList(a) => {
            budget("limit", a.limit, MAX_LIMIT)?;
            let p = ps_params(&a.c, g)?;
            let values = enumerate_ps_partitioned(a.limit, &p, parts)?;
            let mut r = Report::new(json!({ "c": p.c_string(), "limit": a.limit, "count": values.len() }));
            r.insert("values", to_value(&values));
            Ok(r.with_table("values", &["value"]))
        }
        Command::PsPrimes(a) => {
            budget("limit", a.limit, MAX_LIMIT)?;
            if a.limit < 2 {
                return Err(invalid("limit must be >= 2"));
            }
            let p = ps_params(&a.c, g)?;
            let primes = enumerate_ps_primes_partitioned(a.limit, &p, parts)?;
            let mut r = Report::new(json!({ "c": p.c_string(), "limit": a.limit, "count": primes.len() }));
            r.insert("primes", to_value(&primes));
            Ok(r.with_table("primes", &["prime"]))
        }
        Command::PsMember(a) => {
            if a.n == 0 {
                return Err(invalid("n must be >= 1"));
            }
            let p = ps_params(&a.c, g)?;
            let f0 = floor_neg_pow_delta(a.n, &p)?;
            let f1 = floor_neg_pow_delta(a.n + 1, &p)?;
            Ok(Report::new(json!({
                "c": p.c_string(),
                "n": a.n,
                "member": f0 - f1 == 1,
                "floor_neg_n_delta": f0.to_string(),
                "floor_neg_n_plus_1_delta": f1.to_string(),
                "delta_psi": delta_psi(a.n, &p)?,
            })))
        }
        Command::Kmod(a) => {
            let k = modulus_k(a.k)?;
            let local = k_primes(a.k)
                .into_iter()
                .map(|p| theta_gamma(p, a.k))
                .collect::<Result<Vec<_>, _>>()?;
            let mut r = Report::new(json!({ "k": a.k, "K": k }));
            r.insert("local_exponents", to_value(&local));
            Ok(r.with_table("local_exponents", &[]))
        }
        Command::GaussSum(a) => match (a.scan_q_max, a.a, a.q) {
            (Some(q_max), _, _) => Ok(Report::new(to_value(&gauss_bound_scan(a.k, q_max, a.exponent, parts)?))),
            (None, Some(aa), Some(q)) => {
                let v = gauss_power_sum(aa, q, a.k)?;
                Ok(Report::new(json!({
                    "a": aa,
                    "q": q,
                    "k": a.k,
                    "value": to_value(&v),
                    "abs": v.norm(),
                    "phi": euler_phi(q),
                    "ratio": v.norm() / (q as f64).powf(a.exponent),
                    "exponent": a.exponent,
                })))
            }
            _ => Err(invalid("give --a and --q, or --scan-q-max")),
        },
        Command::SMQ(a) => {
            let v = s_m_of_q(a.m, a.q, a.s, a.k)?;
            let direct = s_m_of_q_direct(a.m, a.q, a.s, a.k)?;
            Ok(Report::new(json!({
                "m": a.m, "q": a.q, "s": a.s, "k": a.k, "value": v, "direct": direct,
            })))
        }
        Command::SingularSeries(a) => {
            let r = singular_series_partitioned(a.m, a.s, a.k, a.q_max, parts)?;
            Ok(Report::new(to_value(&r)).with_table("terms", &["q", "s_m_q"]))
        }
        Command::WeylSum(a) => {
            budget("X", a.x, MAX_TERMS)?;
            let al = alpha(&a.alpha)?;
            let v = weyl_sum_partitioned(al, a.k, a.x, parts);
            Ok(sample(SumKind::Weyl, al, a.k, a.x, v, a.x, None))
        }
        Command::PsPrimeSum(a) => {
            budget("X", a.x, MAX_LIMIT)?;
            let p = ps_params(&a.c, g)?;
            let al = alpha(&a.alpha)?;
            let v = ps_prime_sum_partitioned(al, a.k, a.x, &p, parts)?;
            let terms = enumerate_ps_primes_partitioned(a.x, &p, parts)?.len() as u64;
            Ok(sample(SumKind::SPs, al, a.k, a.x, v, terms, Some(p.c_string())))
        }
        Command::WeightedPrimeSum(a) => {
            budget("X", a.x, MAX_LIMIT)?;
            let p = ps_params(&a.c, g)?;
            let al = alpha(&a.alpha)?;
            let v = weighted_prime_sum(al, a.k, a.x, &p)?;
            let terms = ps_lab::primes::primes_up_to(a.x).len() as u64;
            Ok(sample(SumKind::TWeighted, al, a.k, a.x, v, terms, Some(p.c_string())))
        }
        Command::VaalerCheck(a) => {
            budget("points * H", a.points.saturating_mul(a.h as u64), MAX_TERMS)?;
            Ok(Report::new(to_value(&vaaler_check(a.h, a.points)?)))
        }
        Command::VaughanCheck(a) => match a.n_max {
            None => Ok(Report::new(to_value(&vaughan_decompose(a.n, a.u, a.v)?))),
            Some(n_max) => {
                if n_max > 1_000_000 {
                    return Err(Error::BudgetExceeded("n-max above 10^6".into()));
                }
                let start = (a.v.floor() as u64 + 1).max(a.n);
                let mut worst: f64 = 0.0;
                let mut worst_n = start;
                for n in start..=n_max {
                    let t = vaughan_decompose(n, a.u, a.v)?;
                    let err = (t.combination - von_mangoldt(n)).abs();
                    if err > worst {
                        worst = err;
                        worst_n = n;
                    }
                }
                Ok(Report::new(json!({
                    "u": a.u,
                    "v": a.v,
                    "n_min": start,
                    "n_max": n_max,
                    "checked": n_max.saturating_sub(start) + u64::from(n_max >= start),
                    "max_abs_error": worst,
                    "argmax_n": worst_n,
                })))
            }
        },
        Command::ShiftedSum(a) => {
            if a.hi <= a.lo {
                return Err(invalid("need lo < hi"));
            }
            budget("hi - lo", a.hi - a.lo, MAX_TERMS)?;
            let g_coeffs = if a.coeffs.trim().is_empty() {
                Vec::new()
            } else {
                a.coeffs.split(',').map(alpha).collect::<Result<Vec<_>, _>>()?
            };
            let v = shifted_poly_sum(&g_coeffs, a.d, a.delta, a.lo, a.hi);
            Ok(Report::new(json!({
                "kind": SumKind::ShiftedPoly,
                "value": to_value(&v),
                "abs": v.norm(),
                "terms": a.hi - a.lo,
            })))
        }
        Command::BoundExperiment(a) => {
            let lemma: BoundLemma = a.lemma.parse()?;
            let p = ps_params(&a.c, g)?;
            let mut grid = BoundGrid::new(a.k, p.delta_f64());
            if let Some(ell) = a.ell {
                grid.ell = ell;
            }
            grid.epsilon = a.epsilon;
            grid.d_values = parse_grid_f64(&a.d_values)?;
            grid.n_values = parse_grid_u64(&a.n_values)?;
            grid.corput_q = a.corput_q;
            grid.x_exponents = parse_grid_f64(&a.x_exponents)?;
            grid.coefficients = a.coefficients.parse::<Coefficients>()?;
            grid.seed = g.seed;
            Ok(Report::new(to_value(&bound_experiment(lemma, &grid)?)).with_table("points", &[]))
        }
        Command::MajorArcs(a) => {
            let s = build_major_arcs(ArcParams { x: a.x, k: a.k, kappa: a.kappa })?;
            let expected = s.expected_count();
            let mut r = Report::new(to_value(&s));
            r.insert("arc_count", s.arcs.len());
            r.insert("expected_count", expected);
            r.insert("disjoint", true);
            Ok(r.with_table("arcs", &[]))
        }
        Command::OscI(a) => {
            let res = osc_integral_i(a.z, a.n, a.k, a.delta)?;
            let mut r = Report::new(to_value(&res));
            r.insert("abs", res.value.norm());
            Ok(r)
        }
        Command::OscJ(a) => {
            let res = osc_integral_j(a.z, a.n, a.k, a.delta)?;
            let mut r = Report::new(to_value(&res));
            r.insert("abs", res.value.norm());
            Ok(r)
        }
        Command::VApprox(a) => Ok(Report::new(to_value(&v_approx(a.alpha, a.a, a.q, a.n, a.k, a.delta, a.kappa)?))),
        Command::MainTerm(a) => {
            let m = main_term(&MainTermParams { n: a.n, s: a.s, k: a.k, c: a.c }, a.q_max)?;
            Ok(Report::new(to_value(&m)))
        }
        Command::TwoT(a) => Ok(Report::new(json!({ "k": a.k, "two_t": two_t_table(a.k)? }))),
        Command::Nu(a) => Ok(Report::new(json!({ "k": a.k, "nu": nu_of_k(a.k)? }))),
        Command::CRange(a) => Ok(Report::new(to_value(&c_range(a.k, a.s, a.t)?))),
        Command::RepCount(a) => {
            let p = ps_params(&a.c, g)?;
            match a.to {
                None => {
                    let dp = count_table(a.n, a.s, a.k, &p)?[a.n as usize];
                    let mitm = count_representations_mitm(a.n, a.s, a.k, &p)?;
                    Ok(Report::new(json!({
                        "n": a.n, "s": a.s, "k": a.k, "c": p.c_string(),
                        "count": dp, "mitm_count": mitm.to_string(), "agree": dp == mitm,
                    })))
                }
                Some(to) => {
                    if to < a.n {
                        return Err(invalid("need n <= to"));
                    }
                    let table = count_table(to, a.s, a.k, &p)?;
                    let rows: Vec<Value> =
                        (a.n..=to).map(|n| json!({ "n": n, "count": table[n as usize] })).collect();
                    let mut r = Report::new(json!({ "s": a.s, "k": a.k, "c": p.c_string() }));
                    r.insert("rows", rows);
                    Ok(r.with_table("rows", &[]))
                }
            }
        }
        Command::MomentCount(a) => Ok(Report::new(to_value(&moment_count(a.t, a.k, a.x)?))),
        Command::QuadratureCheck(a) => {
            budget("M * X", a.m.saturating_mul(a.x), MAX_TERMS)?;
            Ok(Report::new(to_value(&quadrature_vs_count(a.t, a.k, a.x, a.m, parts)?)))
        }
        Command::Compare(a) => {
            let p = ps_params(&a.c, g)?;
            let t = compare_to_main_term((a.lo, a.hi), a.s, a.k, &p, a.q_max, parts)?;
            Ok(Report::new(to_value(&t)).with_table("rows", &[]))
        }
    }
}

fn sample(
    kind: SumKind,
    al: Frac128,
    k: u32,
    x: u64,
    value: ps_lab::Complex64,
    terms: u64,
    c: Option<String>,
) -> Report {
    let s = ExpSumSample { kind, alpha: al.to_f64(), k, x, value, terms, c };
    let mut r = Report::new(to_value(&s));
    r.insert("abs", value.norm());
    r
}
