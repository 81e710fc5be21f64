//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::Instant;

use qtheta::qspecial::{
    log_q_gamma, q_number, theta4, theta4_imag, zeta_q_laurent, zeta_regularized_product_q, c_q, NomeP, QBase,
};
use qtheta::quadrature::{
    integrate_adaptive, integrate_tanh_sinh, trapezoid_coefficients, ContourConfig, QuadConfig,
};
use qtheta::series_core::{partition_gf, partition_numbers, q_pochhammer_inf, GenfuncKind, TruncationPolicy};
use qtheta::special_functions::{
    d2_hyp2f1_dc2, d_hyp2f1_dc, dilog, hurwitz_zeta_s_derivative_at_0, hyp2f1_11, log_gamma, LN_SQRT_2PI, ZETA2,
};
use qtheta::verify::{self, CheckReport, Tolerances};
use qtheta::Complex64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// All reports pass and have `abs_err <= tol`.
fn grid_outcome(label: &str, reports: &[CheckReport], tol: f64) -> Outcome {
    let bad: Vec<_> = reports.iter().filter(|r| !(r.pass && r.abs_err <= tol)).collect();
    let worst = reports.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let mut detail = format!(
        "{label}: {}/{} within {tol:e} (max abs_err {worst:.2e})",
        reports.len() - bad.len(),
        reports.len()
    );
    for r in &bad {
        detail.push_str(&format!("; FAIL {:?} {}", r.params, r.notes));
    }
    outcome(bad.is_empty(), detail)
}

fn join(parts: Vec<Outcome>) -> Outcome {
    outcome(
        parts.iter().all(|o| o.pass),
        parts.iter().map(|o| o.detail.as_str()).collect::<Vec<_>>().join(" | "),
    )
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn policy() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for q in [1.5, 2.0, 5.0, 10.0] {
        for t in [0.25, 0.5, 1.0, 2.0] {
            reports.push(verify::check_raabe_q(q, t, &tol()).unwrap());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let grid = grid_outcome("raabe_q", &reports, 1e-7);
    outcome(grid.pass && secs < 10.0, format!("{} in {secs:.2} s", grid.detail))
}

fn criterion_2() -> Outcome {
    let reports: Vec<_> = [1.2, 1.5, 2.0, 5.0, 20.0]
        .into_iter()
        .map(|q| verify::check_raabe_q_special(q, &tol()).unwrap())
        .collect();
    grid_outcome("raabe_q_special", &reports, 1e-7)
}

fn criterion_3() -> Outcome {
    let mut thm2 = Vec::new();
    let mut inner = Vec::new();
    for q in [1.5, 2.0, 5.0] {
        for t in [0.25, 1.0, 2.0] {
            for s in [1.5, 2.0, 3.0] {
                thm2.push(verify::check_theorem2(q, t, s, &tol()).unwrap());
                for n in [0, 1, 3] {
                    inner.push(verify::check_inner_antiderivative(q, t, s, n, &tol()).unwrap());
                }
            }
        }
    }
    join(vec![
        grid_outcome("theorem2", &thm2, 1e-8),
        grid_outcome("inner_antiderivative", &inner, 1e-9),
    ])
}

fn criterion_4() -> Outcome {
    let mut reports = Vec::new();
    for q in [1.5, 2.0, 10.0] {
        for t in [0.5, 1.0, 2.0] {
            reports.push(verify::check_residue_formula(q, t, &tol()).unwrap());
        }
    }
    grid_outcome("residue_formula", &reports, 1e-9)
}

fn criterion_5() -> Outcome {
    let reports: Vec<_> = [0.2, 0.5, 0.8]
        .into_iter()
        .map(|p| verify::check_main_theta(p, &tol()).unwrap())
        .collect();
    let routes = [0.2, 0.5, 0.8]
        .into_iter()
        .map(|p| {
            let (a, b) = verify::main_theta_rhs_routes(p).unwrap();
            (a - b).abs()
        })
        .fold(0.0, f64::max);
    let zeros: Vec<_> = [2, 3]
        .into_iter()
        .map(|den| verify::check_theta_zero(den, 50).unwrap())
        .collect();
    join(vec![
        grid_outcome("main_theta", &reports, 1e-6),
        outcome(routes <= 1e-12, format!("rhs routes agree to {routes:.1e}")),
        grid_outcome("theta_zero exact (p=1/2, 1/3)", &zeros, 0.0),
    ])
}

fn criterion_6() -> Outcome {
    let lerch: Vec<_> = [0.5, 1.0, 1.5, 2.0, 3.0]
        .into_iter()
        .map(|x| verify::check_lerch(x, &tol()).unwrap())
        .collect();
    let mut nk = Vec::new();
    let mut residue = Vec::new();
    for x in [0.5, 1.0, 2.5] {
        for q in [1.5, 2.0, 5.0] {
            nk.push(verify::check_nk(x, q, &tol()).unwrap());
            residue.push(verify::check_zeta_q_residue(x, q, &tol()).unwrap());
        }
    }
    join(vec![
        grid_outcome("lerch", &lerch, 1e-8),
        grid_outcome("nk", &nk, 1e-7),
        grid_outcome("zeta_q residue", &residue, 1e-8),
    ])
}

fn criterion_7() -> Outcome {
    let mut triple = Vec::new();
    for y in [0.5, 1.0, 2.0] {
        for p in [0.3, 0.5] {
            triple.push(verify::check_triple_product(y, p, &tol()).unwrap());
        }
    }
    let mut link = Vec::new();
    for x in [0.1, 0.25, 0.5, 0.75, 0.9] {
        for q in [1.5, 2.0] {
            link.push(verify::check_theta_gamma_link(x, q, &tol()).unwrap());
        }
    }
    join(vec![
        grid_outcome("triple_product", &triple, 1e-10),
        grid_outcome("theta_gamma_link", &link, 1e-9),
    ])
}

fn criterion_8() -> Outcome {
    let genfunc: Vec<_> = GenfuncKind::ALL
        .into_iter()
        .map(|k| verify::check_genfunc(k, 200))
        .collect();
    let partitions = verify::check_partitions(50).unwrap();
    let p10 = partition_numbers(10).values()[10].to_string();
    join(vec![
        grid_outcome("generating functions to order 200", &genfunc, 0.0),
        grid_outcome("P(n) vs enumeration, n <= 50", &[partitions], 0.0),
        outcome(p10 == "42", format!("P(10) = {p10}")),
    ])
}

fn criterion_9() -> Outcome {
    let reports: Vec<_> = [0.0, 1.0, 2.0]
        .into_iter()
        .map(|t| verify::check_classical_raabe(t, &tol()).unwrap())
        .collect();
    let cfg = QuadConfig {
        abs_tol: 1e-11,
        rel_tol: 1e-11,
        ..QuadConfig::default()
    };
    let integral = integrate_adaptive(|x| log_gamma(x).unwrap(), 0.0, 1.0, &cfg).unwrap().value;
    let err = (integral - LN_SQRT_2PI).abs();
    join(vec![
        grid_outcome("classical_raabe", &reports, 1e-9),
        outcome(err <= 1e-9, format!("int_0^1 log Gamma = log sqrt(2 pi) to {err:.1e}")),
    ])
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir().join(format!("qtheta-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta4.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_qtheta"))
        .args(["sample", "--p", "0.5", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    std::fs::remove_dir_all(&dir).ok();
    let mut lines = text.lines();
    let header_ok = lines.next() == Some("t,theta4");
    let values: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    if !status.success() || values.len() != 201 {
        return outcome(false, format!("sample exited {status}, {} rows", values.len()));
    }
    let n = values.len();
    let ends = values[0].abs().max(values[n - 1].abs());
    let center = values[n / 2];
    let palindrome = (0..n).map(|i| (values[i] - values[n - 1 - i]).abs()).fold(0.0, f64::max);
    let interior_positive = values[1..n - 1].iter().all(|&v| v > 0.0);
    let unimodal = values[..=n / 2].windows(2).all(|w| w[1] > w[0]);
    let pass = header_ok
        && ends <= 1e-12
        && (center - 0.121124208002).abs() <= 1e-9
        && palindrome <= 1e-12
        && interior_positive
        && unimodal;
    outcome(
        pass,
        format!(
            "201 rows; endpoints {ends:.1e}; center {center:.12}; palindrome {palindrome:.1e}; \
             positive interior {interior_positive}; increasing to center {unimodal}"
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut parts = Vec::new();
    let policy = policy();

    // series_core
    let recip = [0.1, 0.3, 0.5, 0.7, 0.9]
        .into_iter()
        .map(|p| (partition_gf(p, 20_000, &policy).unwrap() * q_pochhammer_inf(p, p, &policy).unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    parts.push(outcome(recip <= 1e-12, format!("partition gf x Euler product {recip:.1e}")));
    let mut monotone = true;
    for q in [0.1, 0.5, 0.9] {
        let values: Vec<f64> = (0..100).map(|i| q_pochhammer_inf(i as f64 / 100.0, q, &policy).unwrap()).collect();
        monotone &= values.windows(2).all(|w| w[1] <= w[0]);
    }
    parts.push(outcome(monotone, "(a;q) decreasing in a"));

    // special_functions
    let reflection = (1..=9)
        .map(|i| {
            let z = i as f64 / 10.0;
            (dilog(z).unwrap() + dilog(1.0 - z).unwrap() + z.ln() * (1.0 - z).ln() - ZETA2).abs()
        })
        .fold(0.0, f64::max);
    parts.push(outcome(reflection <= 1e-13, format!("dilog reflection {reflection:.1e}")));
    let log_identity = [0.1, -0.1, 0.5, -0.5, 0.9]
        .into_iter()
        .map(|z: f64| (hyp2f1_11(Complex64::new(2.0, 0.0), z, &policy).unwrap().re * z + (-z).ln_1p()).abs())
        .fold(0.0, f64::max);
    parts.push(outcome(log_identity <= 1e-12, format!("z 2F1(1,1;2;z) + log(1-z) {log_identity:.1e}")));
    let f = |c: f64, z: f64| hyp2f1_11(Complex64::new(c, 0.0), z, &policy).unwrap().re;
    let (mut d1_err, mut d2_err) = (0.0f64, 0.0f64);
    for z in [-0.5, 0.25, 0.5, 0.75] {
        let h1 = 1e-5;
        let fd1 = (f(1.0 + h1, z) - f(1.0 - h1, z)) / (2.0 * h1);
        d1_err = d1_err.max((fd1 - d_hyp2f1_dc(z).unwrap()).abs());
        let h2 = 1e-4;
        let fd2 = (f(1.0 + h2, z) - 2.0 * f(1.0, z) + f(1.0 - h2, z)) / (h2 * h2);
        d2_err = d2_err.max((fd2 - d2_hyp2f1_dc2(z).unwrap()).abs());
    }
    parts.push(outcome(d1_err <= 1e-6 && d2_err <= 1e-5, format!("c-derivatives vs differences {d1_err:.1e}, {d2_err:.1e}")));
    let lerch = [0.5, 1.0, 1.5, 2.0, 3.0]
        .into_iter()
        .map(|x: f64| {
            ((-hurwitz_zeta_s_derivative_at_0(x).unwrap()).exp() * log_gamma(x).unwrap().exp() / (2.0 * std::f64::consts::PI).sqrt() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    parts.push(outcome(lerch <= 1e-8, format!("Lerch ratio {lerch:.1e}")));

    // qspecial
    let mut functional = 0.0f64;
    let mut residue = 0.0f64;
    let mut nk = 0.0f64;
    for q in [1.5, 2.0, 5.0] {
        let base = QBase::new(q).unwrap();
        for x in [0.25, 0.5, 1.0, 1.7, 3.0] {
            let lhs = log_q_gamma(x + 1.0, &base, &policy).unwrap() - log_q_gamma(x, &base, &policy).unwrap();
            functional = functional.max((lhs - q_number(x, &base).ln()).abs());
        }
        for x in [0.5, 1.0, 2.0] {
            let c = zeta_q_laurent(x, &base, None).unwrap();
            residue = residue.max((c.c_m1.re - 1.0 / base.log_q()).abs());
            let product = zeta_regularized_product_q(x, &base).unwrap();
            let closed = c_q(&base, &policy).unwrap() - log_q_gamma(x, &base, &policy).unwrap();
            nk = nk.max((product - closed).abs());
        }
    }
    parts.push(outcome(functional <= 1e-10, format!("q-gamma functional equation {functional:.1e}")));
    parts.push(outcome(residue <= 1e-8, format!("zeta_q residue {residue:.1e}")));
    parts.push(outcome(nk <= 1e-7, format!("regularized product {nk:.1e}")));
    let mut parity = 0.0f64;
    let mut positive = true;
    for p in [0.2, 0.5, 0.8] {
        let nome = NomeP::new(p).unwrap();
        for w in [Complex64::new(0.3, 0.1), Complex64::new(-1.1, 0.4), Complex64::new(2.0, -0.2)] {
            parity = parity.max((theta4(w, &nome, &policy).unwrap() - theta4(-w, &nome, &policy).unwrap()).norm());
        }
        let l = nome.half_gap() * (1.0 - 1e-3);
        positive &= (0..=400).all(|i| theta4_imag(-l + 2.0 * l * i as f64 / 400.0, &nome, &policy).unwrap() > 0.0);
    }
    parts.push(outcome(parity <= 1e-13, format!("theta4 parity {parity:.1e}")));
    parts.push(outcome(positive, "theta4_imag positive between zeros"));

    // quadrature
    let mut poly = 0.0f64;
    let mut unsplit = true;
    for degree in 0..=10 {
        let r = integrate_adaptive(|x| x.powi(degree), 0.0, 1.0, &QuadConfig::default()).unwrap();
        poly = poly.max((r.value - 1.0 / (degree as f64 + 1.0)).abs());
        unsplit &= r.evaluations == 15;
    }
    parts.push(outcome(poly <= 1e-14 && unsplit, format!("Gauss-Kronrod polynomials {poly:.1e}")));
    let ts_cfg = QuadConfig {
        ts_max_level: 10,
        ..QuadConfig::default()
    };
    let ts = integrate_tanh_sinh(|x| x.ln(), 0.0, 1.0, &ts_cfg).map(|r| (r.value + 1.0).abs());
    parts.push(outcome(
        matches!(ts, Ok(e) if e <= 1e-10),
        format!("tanh-sinh int log x by level 10: {ts:?}"),
    ));
    let base = QBase::new(2.0).unwrap();
    let a = zeta_q_laurent(1.0, &base, Some(&ContourConfig::with_radius(0.3))).unwrap();
    let b = zeta_q_laurent(1.0, &base, Some(&ContourConfig::with_radius(0.5))).unwrap();
    let radius = (a.c_m1 - b.c_m1).norm().max((a.c0 - b.c0).norm()).max((a.c1 - b.c1).norm());
    parts.push(outcome(radius <= 1e-10, format!("contour radius 0.3 vs 0.5 {radius:.1e}")));
    let errors: Vec<f64> = [4usize, 8, 16]
        .into_iter()
        .map(|n| {
            let c = trapezoid_coefficients(|s| Ok(s.exp() / (s * s)), 0.5, n).unwrap();
            (c.c1.re - 1.0 / 6.0).abs()
        })
        .collect();
    let decays = errors.windows(2).all(|w| w[1] <= 1e-15 || w[0] / w[1] >= 1e3);
    parts.push(outcome(decays, format!("trapezoid error per doubling {:?}", errors.iter().map(|e| format!("{e:.1e}")).collect::<Vec<_>>())));

    // verify
    let first = serde_json::to_string(&verify::run_all(&tol())).unwrap();
    let second = serde_json::to_string(&verify::run_all(&tol())).unwrap();
    parts.push(outcome(first == second, "run_all deterministic"));
    let halves = [0.2, 0.5, 0.8]
        .into_iter()
        .map(|p| {
            let (l, r) = verify::main_theta_halves(p, &QuadConfig { abs_tol: 1e-12, ..QuadConfig::default() }).unwrap();
            (l - r).abs()
        })
        .fold(0.0, f64::max);
    parts.push(outcome(halves <= 1e-9, format!("theta integral halves {halves:.1e}")));
    let limits: Vec<_> = [1.5, 2.0, 3.0].into_iter().map(|q| verify::check_t_limit(q, &tol()).unwrap()).collect();
    let worst_abs = limits.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let worst_rel = limits.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    parts.push(outcome(
        limits.iter().all(|r| r.pass),
        format!("t -> 0 limit at t=1e-4: abs {worst_abs:.2e}, rel {worst_rel:.2e} (report rule)"),
    ));

    // cli
    parts.push(cli_contract());
    join(parts)
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qtheta");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    let dir = std::env::temp_dir().join(format!("qtheta-acceptance-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("report.json");
    let ok = code(&["check", "raabe_q", "--q", "2", "--t", "1", "--out", json.to_str().unwrap()]);
    let failing = code(&["check", "t_limit", "--q", "2", "--tol", "1e-12", "--out", dir.join("f.json").to_str().unwrap()]);
    let usage = code(&["check", "bogus"]);
    let io = code(&["check", "lerch", "--out", dir.join("missing/r.json").to_str().unwrap()]);
    let text = std::fs::read_to_string(&json).unwrap_or_default();
    let round_trip = serde_json::from_str::<qtheta_cli::document::ReportDocument>(&text)
        .map(|doc| doc.to_json() == text)
        .unwrap_or(false);
    std::fs::remove_dir_all(&dir).ok();
    let codes = [ok, failing, usage, io];
    outcome(
        codes == [Some(0), Some(1), Some(2), Some(3)] && round_trip,
        format!("exit codes {codes:?}; JSON round trip {round_trip}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("q-Raabe formula", criterion_1),
        ("q-Raabe formula at t = 0", criterion_2),
        ("integral of the q-Hurwitz zeta function", criterion_3),
        ("residue formula", criterion_4),
        ("theta integral between zeros", criterion_5),
        ("regularized products", criterion_6),
        ("triple product and theta-gamma link", criterion_7),
        ("exact layer", criterion_8),
        ("classical Raabe baselines", criterion_9),
        ("theta4(ix, 1/2) sample", criterion_10),
        ("property suite", criterion_11),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failures += 1;
        }
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {:2} {status} {title}: {}", i + 1, result.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
