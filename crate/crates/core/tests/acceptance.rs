//! End-to-end acceptance checks. Runs as a plain binary so that every
//! criterion prints its own PASS/FAIL line; exits non-zero if any fails.

use std::f64::consts::PI;

use num_complex::Complex64;
use pt_solvable::contour::{liouville_potential, AnyContour, ArchContour, ArchMap, Contour, LiouvilleMap, ShiftedLine};
use pt_solvable::numeric::{verify_family, FamilyParams, Grid, VerificationReport, VerifyConfig, ORDER_RANGE};
use pt_solvable::potentials::{eval_hulthen, pt_defect, EckartParams, HulthenParams, PoschlTellerParams};
use pt_solvable::special::{jacobi_p_hyp, jacobi_p_rec};
use pt_solvable::spectra::{
    eckart_spacing, eckart_spectrum, hulthen_parent, hulthen_spectrum, rpt_real_energy_condition, rpt_spectrum,
    JacobiConvention, LevelAux, Parity, QuantumNumbers,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(42 + stream)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn eckart_report(epsilon: f64, convention: JacobiConvention) -> VerificationReport {
    let p = EckartParams::new(3.0, 1.0, epsilon).unwrap();
    let line = AnyContour::Line(ShiftedLine::wide(epsilon).unwrap());
    let grid = Grid::new(-18.0, 18.0, 4001).unwrap();
    let cfg = VerifyConfig {
        tol_energy: 1e-5,
        tol_imag: 1e-7,
        convention,
        ..Default::default()
    };
    verify_family(&FamilyParams::Eckart(p), &line, &grid, &cfg)
}

fn rpt_report() -> VerificationReport {
    let p = PoschlTellerParams::new(3.5, 1.5, 0.3).unwrap();
    let line = AnyContour::Line(ShiftedLine::new(0.3).unwrap());
    let grid = Grid::new(-12.0, 12.0, 3001).unwrap();
    verify_family(&FamilyParams::PoschlTeller(p), &line, &grid, &VerifyConfig::default())
}

fn orders_in_range(report: &VerificationReport) -> bool {
    !report.levels.is_empty()
        && report
            .levels
            .iter()
            .all(|l| l.order.is_some_and(|o| (ORDER_RANGE.0..=ORDER_RANGE.1).contains(&o)))
}

fn eckart_closed_form(eckart: &VerificationReport) -> Outcome {
    let energies: Vec<f64> = eckart.levels.iter().map(|l| l.energy).collect();
    let expected = [-3.75, 0.0];
    let exact = energies.len() == 2 && energies.iter().zip(expected).all(|(e, x)| (e - x).abs() <= 1e-14);
    let err = eckart.max_abs_err();
    let imag = eckart.levels.iter().map(|l| l.imag()).fold(0.0, f64::max);
    check(
        exact && eckart.pass && err <= 1e-5 && imag <= 1e-7,
        format!("energies {energies:?}, max |dE| {err:.2e}, max |Im| {imag:.2e}"),
    )
}

fn rpt_three_levels(rpt: &VerificationReport) -> Outcome {
    let p = PoschlTellerParams::new(3.5, 1.5, 0.3).unwrap();
    let spectrum = rpt_spectrum(&p);
    let expected = [
        (Parity::Minus, Parity::Minus, 0, -16.0),
        (Parity::Minus, Parity::Minus, 1, -4.0),
        (Parity::Minus, Parity::Plus, 0, -1.0),
    ];
    let labelled = expected.iter().all(|&(s, t, n, e)| {
        spectrum
            .find(QuantumNumbers::poschl_teller(s, t, n))
            .is_some_and(|l| (l.energy - e).abs() <= 1e-14)
    });
    let empty = spectrum.count(Parity::Plus, Parity::Minus) == 0;
    let err = rpt.max_abs_err();
    check(
        spectrum.len() == 3 && labelled && empty && rpt.pass && err <= 1e-6,
        format!("{} levels, (+,-) empty: {empty}, max |dE| {err:.2e}", spectrum.len()),
    )
}

fn family_existence() -> Outcome {
    let mut rng = rng(3);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let alpha = rng.random_range(1e-9..6.0);
        let beta = rng.random_range(1e-9..6.0);
        let s = rpt_spectrum(&PoschlTellerParams::new(alpha, beta, 0.3).unwrap());
        let predicted = [alpha + beta > 1.0, alpha > beta + 1.0, beta > alpha + 1.0];
        let found = [
            s.count(Parity::Minus, Parity::Minus) > 0,
            s.count(Parity::Minus, Parity::Plus) > 0,
            s.count(Parity::Plus, Parity::Minus) > 0,
        ];
        if predicted != found {
            mismatches += 1;
        }
    }
    check(mismatches == 0, format!("{mismatches} mismatches in 1000 draws"))
}

fn liouville_identity() -> Outcome {
    let p = HulthenParams::new(2.0, 2.0).unwrap();
    let spectrum = hulthen_spectrum(&p).map_err(|e| e.to_string())?;
    let level = spectrum
        .levels
        .iter()
        .find(|l| l.qn.sigma == Parity::Minus && l.qn.n == 0)
        .ok_or("level (-1, 0) missing")?;
    let eps = PI / 6.0;
    let parent = hulthen_parent(&p, level, eps).map_err(|e| e.to_string())?;
    let kappa = level.kappa();
    let map = LiouvilleMap::new(ArchMap, kappa);
    let arch = ArchContour::new(eps).unwrap();
    let grid = Grid::new(-3.0, 3.0, 101).unwrap();
    let mut worst = 0.0f64;
    for x in grid.xs() {
        let xi = arch.map_point(x);
        let rhs = liouville_potential(&parent, &map, xi).map_err(|e| e.to_string())?;
        let vh = eval_hulthen(&p, xi).map_err(|e| e.to_string())?;
        worst = worst.max((rhs - (vh - kappa * kappa)).norm());
    }
    check(
        worst <= 1e-6,
        format!("kappa {kappa}, max |RHS - (V_H - kappa^2)| {worst:.2e}"),
    )
}

fn hulthen_algebra() -> Outcome {
    let mut rng = rng(5);
    let (mut accepted, mut worst_e, mut worst_c, mut min_e) = (0, 0.0f64, 0.0f64, f64::INFINITY);
    while accepted < 100 {
        let alpha = rng.random_range(0.1..6.0);
        let cc = rng.random_range(-8.0..8.0);
        let sigma = if rng.random_bool(0.5) {
            Parity::Plus
        } else {
            Parity::Minus
        };
        let n = rng.random_range(0..4usize);
        let Ok(p) = HulthenParams::new(alpha, cc) else { continue };
        let Ok(spectrum) = hulthen_spectrum(&p) else { continue };
        let Some(level) = spectrum.levels.iter().find(|l| l.qn.sigma == sigma && l.qn.n == n) else {
            continue;
        };
        let LevelAux::Hulthen { s, tau_beta, kappa } = level.aux else {
            return Err("Hulthén level without Hulthén data".into());
        };
        worst_e = worst_e.max((level.energy - kappa * kappa).abs());
        worst_c = worst_c.max((cc - s * (s + 2.0 * tau_beta)).abs());
        min_e = min_e.min(level.energy);
        accepted += 1;
    }
    check(
        worst_e <= 1e-12 && worst_c <= 1e-12 && min_e > 0.0,
        format!("max |E - kappa^2| {worst_e:.2e}, max |C - s(s+2tb)| {worst_c:.2e}, min E {min_e:.3e}"),
    )
}

fn residual_orders(eckart: &VerificationReport, rpt: &VerificationReport) -> Outcome {
    let halved = eckart_report(0.5, JacobiConvention::Halved);
    let fmt = |r: &VerificationReport| {
        r.levels
            .iter()
            .map(|l| l.order.map_or("-".to_string(), |o| format!("{o:.3}")))
            .collect::<Vec<_>>()
            .join(",")
    };
    let wrong_rejected = !halved.pass && !orders_in_range(&halved);
    check(
        orders_in_range(eckart) && orders_in_range(rpt) && wrong_rejected,
        format!(
            "Eckart orders [{}], RPT orders [{}], halved convention orders [{}]",
            fmt(eckart),
            fmt(rpt),
            fmt(&halved)
        ),
    )
}

fn spacing() -> Outcome {
    let mut rng = rng(7);
    let (mut accepted, mut worst, mut min_gap) = (0, 0.0f64, f64::INFINITY);
    while accepted < 500 {
        let a = rng.random_range(1.0..10.0);
        let beta = rng.random_range(0.0..3.0);
        let n = rng.random_range(1..8usize);
        if a - n as f64 - 1.0 <= 0.05 {
            continue;
        }
        let p = EckartParams::new(a, beta, 0.5).map_err(|e| e.to_string())?;
        let spectrum = eckart_spectrum(&p).map_err(|e| e.to_string())?;
        let e = spectrum.energies();
        let gap = eckart_spacing(&p, n).map_err(|e| e.to_string())?;
        let direct = e[n] - e[n - 1];
        let scale = e[n].abs().max(e[n - 1].abs()).max(1.0);
        worst = worst.max((gap - direct).abs() / scale);
        min_gap = min_gap.min(gap);
        accepted += 1;
    }
    check(
        worst <= 1e-12 && min_gap > 1.0,
        format!("max relative mismatch {worst:.2e}, smallest spacing {min_gap:.4}"),
    )
}

fn pt_symmetry() -> Outcome {
    let xs = Grid::new(-12.0, 12.0, 1201).unwrap().xs();
    let eckart = pt_defect(
        &EckartParams::new(3.0, 1.0, 0.5).unwrap(),
        &ShiftedLine::wide(0.5).unwrap(),
        &xs,
    );
    let rpt = pt_defect(
        &PoschlTellerParams::new(3.5, 1.5, 0.3).unwrap(),
        &ShiftedLine::new(0.3).unwrap(),
        &xs,
    );
    let hulthen = pt_defect(
        &HulthenParams::new(2.0, 2.0).unwrap(),
        &ArchContour::new(PI / 6.0).unwrap(),
        &xs,
    );
    let defects = [eckart, rpt, hulthen]
        .into_iter()
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| e.to_string())?;
    let mut arch_worst = 0.0f64;
    for eps in [0.1, 0.3, PI / 6.0, 1.0, 1.4] {
        let arch = ArchContour::new(eps).unwrap();
        for x in Grid::new(-5.0, 5.0, 201).unwrap().xs() {
            let lhs = c(x, -eps).sinh() + Complex64::i() * (Complex64::i() * arch.map_point(x)).exp();
            arch_worst = arch_worst.max(lhs.norm());
        }
    }
    let worst = defects.iter().copied().fold(0.0, f64::max);
    check(
        worst <= 1e-12 && arch_worst <= 1e-12,
        format!(
            "defects [{}], arch identity {arch_worst:.1e}",
            defects
                .iter()
                .map(|d| format!("{d:.1e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

fn contour_independence() -> Outcome {
    let reports: Vec<VerificationReport> = [0.3, 0.6, 1.0]
        .into_iter()
        .map(|eps| eckart_report(eps, JacobiConvention::Doubled))
        .collect();
    let mut worst = 0.0f64;
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            if a.levels.len() != b.levels.len() {
                return Err("level counts differ between contours".into());
            }
            for (la, lb) in a.levels.iter().zip(&b.levels) {
                match (la.lambda, lb.lambda) {
                    (Some(x), Some(y)) => worst = worst.max((x - y).norm()),
                    _ => return Err(format!("{} has no eigenvalue on some contour", la.qn)),
                }
            }
        }
    }
    let all_pass = reports.iter().all(|r| r.pass);
    check(
        all_pass && worst <= 1e-6,
        format!("max pairwise spread {worst:.2e}, all verified: {all_pass}"),
    )
}

fn real_energy() -> Outcome {
    let mut rng = rng(10);
    let parity = |rng: &mut ChaCha8Rng| {
        if rng.random_bool(0.5) {
            Parity::Plus
        } else {
            Parity::Minus
        }
    };
    let mut worst = 0.0f64;
    let mut unconstrained_real = 0;
    for _ in 0..100 {
        let (sigma, tau) = (parity(&mut rng), parity(&mut rng));
        let n = rng.random_range(0..5usize);
        let t = rng.random_range(-3.0..3.0);
        let alpha = c(rng.random_range(0.0..6.0), t);
        // σ Im α + τ Im β = 0
        let beta = c(rng.random_range(0.0..6.0), -sigma.sign() * tau.sign() * t);
        let (_, e) = rpt_real_energy_condition(alpha, beta, sigma, tau, n);
        worst = worst.max(e.im.abs());

        let free = c(rng.random_range(0.0..6.0), rng.random_range(-3.0..3.0));
        let (real, _) = rpt_real_energy_condition(alpha, free, sigma, tau, n);
        if real {
            unconstrained_real += 1;
        }
    }
    check(
        worst <= 1e-12 && unconstrained_real == 0,
        format!("constrained max |Im E| {worst:.1e}, unconstrained real: {unconstrained_real}/100"),
    )
}

fn special_cross_oracle() -> Outcome {
    let mut rng = rng(11);
    let draw = |rng: &mut ChaCha8Rng| c(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    let (mut accepted, mut worst) = (0, 0.0f64);
    while accepted < 2000 {
        let n = rng.random_range(0..=15usize);
        let (a, b, y) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let near_pole = (0..n).any(|k| (a + 1.0 + k as f64).norm() <= 0.05)
            || (2..=n).any(|k| {
                let k = k as f64;
                (a + b + k).norm() <= 0.05 || (a + b + 2.0 * k - 2.0).norm() <= 0.05
            });
        if near_pole {
            continue;
        }
        let h = jacobi_p_hyp(n, a, b, y).map_err(|e| e.to_string())?;
        let r = jacobi_p_rec(n, a, b, y).map_err(|e| e.to_string())?;
        worst = worst.max((h - r).norm() / (1.0 + h.norm()));
        accepted += 1;
    }
    check(
        worst <= 1e-10,
        format!("max relative gap {worst:.2e} over {accepted} draws"),
    )
}

fn main() {
    // the two canonical verification runs feed several criteria
    let eckart = eckart_report(0.5, JacobiConvention::Doubled);
    let rpt = rpt_report();

    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        (
            "eckart closed form vs eigensolver",
            Box::new(|| eckart_closed_form(&eckart)),
        ),
        (
            "poschl-teller three-family spectrum",
            Box::new(|| rpt_three_levels(&rpt)),
        ),
        ("family existence inequalities", Box::new(family_existence)),
        ("liouville identity", Box::new(liouville_identity)),
        ("hulthen energy algebra", Box::new(hulthen_algebra)),
        (
            "residual convergence order",
            Box::new(|| residual_orders(&eckart, &rpt)),
        ),
        ("eckart spacing identity and bound", Box::new(spacing)),
        ("pt-symmetry defect and arch identity", Box::new(pt_symmetry)),
        ("contour independence", Box::new(contour_independence)),
        ("real-energy condition", Box::new(real_energy)),
        ("special-function cross-oracle", Box::new(special_cross_oracle)),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[{:>2}] PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[{:>2}] FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
