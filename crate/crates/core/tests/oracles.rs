//! Cross-checks against independent computations: ODE integration,
//! quadrature, brute-force Monte Carlo and closed forms.

use kinopin::abm::{simulate_abm, two_copy_run, AbmConfig, AbmScheme, TwoCopySeeds};
use kinopin::dist::{uniform_grid, AtomicDistribution, EmpiricalDistribution, GridDistribution, InitialLaw, Law};
use kinopin::equilibrium::{
    boxcount_dimension, default_box_scales, equilibrium_grid, fixed_point_residual, hausdorff_dimension,
    sample_equilibrium, support_cover,
};
use kinopin::meanfield::{
    gain_grid, generator_apply, sample_meanfield, solve_pde, ApplyGain, MeanFieldConfig, PdeConfig,
};
use kinopin::metrics::{characteristic_function, wasserstein, wasserstein_grid, XiGrid};
use kinopin::stats::mean_se;
use kinopin::{MeanCurve, ModelParams, RngSpec};
use rand::Rng;

fn rk4(p: &ModelParams, m0: f64, t: f64) -> f64 {
    let steps = 20_000;
    let h = t / steps as f64;
    let mut m = m0;
    for _ in 0..steps {
        let k1 = p.mean_drift(m);
        let k2 = p.mean_drift(m + 0.5 * h * k1);
        let k3 = p.mean_drift(m + 0.5 * h * k2);
        let k4 = p.mean_drift(m + h * k3);
        m += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    m
}

#[test]
fn mean_curve_against_rk4() {
    let p = ModelParams::symmetric(0.25).unwrap();
    let c = MeanCurve::new(&p, 0.5).unwrap();
    assert!((c.eval(1.0) - 0.303265).abs() < 1e-6);
    assert!((c.eval(1.0) - rk4(&p, 0.5, 1.0)).abs() < 1e-8);
    assert_eq!(c.eval(0.0), 0.5);

    let p = ModelParams::new(0.4, 0.9).unwrap();
    assert!((rk4(&p, -0.7, 50.0) - 0.2).abs() < 1e-10);
    // both orderings of the step sizes
    for (a, b, m0) in [(0.4, 0.9, -0.7), (0.9, 0.4, 0.6), (0.1, 0.35, 1.0), (0.8, 0.05, -1.0)] {
        let p = ModelParams::new(a, b).unwrap();
        let c = MeanCurve::new(&p, m0).unwrap();
        for t in [0.3, 1.0, 4.0] {
            assert!((c.eval(t) - rk4(&p, m0, t)).abs() < 1e-8, "({a},{b},{m0}) t={t}");
        }
    }
}

#[test]
fn meanfield_sampler_tracks_the_mean() {
    let p = ModelParams::symmetric(0.3).unwrap();
    let cfg = MeanFieldConfig {
        t_end: 1.0,
        n_paths: 100_000,
        record_times: vec![0.5, 1.0],
    };
    let law = InitialLaw::uniform_on(0.0, 1.0).unwrap();
    let s = sample_meanfield(&p, 0.5, &law, &cfg, RngSpec::from_seed(21)).unwrap();
    let (m, se) = mean_se(s.final_law.samples());
    assert!((m - 0.5 * (-0.6f64).exp()).abs() <= 3.0 * se, "{m} ± {se}");
    assert!((s.moments[1].mean - m).abs() < 1e-12);

    let zero = sample_meanfield(
        &p,
        0.5,
        &law,
        &MeanFieldConfig {
            t_end: 0.0,
            n_paths: 20_000,
            record_times: vec![],
        },
        RngSpec::from_seed(22),
    )
    .unwrap();
    let direct = EmpiricalDistribution::new({
        let mut r = RngSpec::from_seed(23).rng();
        (0..20_000).map(|_| law.sample(&mut r)).collect()
    })
    .unwrap();
    // 1% critical value of the two-sample KS statistic
    assert!(zero.final_law.ks_two_sample(&direct) < 1.63 * (2.0f64 / 20_000.0).sqrt());
}

#[test]
fn pde_mean_follows_the_closed_form() {
    let p = ModelParams::new(0.4, 0.9).unwrap();
    let cfg = PdeConfig::new(10.0, (0..=20).map(|k| k as f64 * 0.5).collect());
    let out = solve_pde(&GridDistribution::uniform(cfg.grid_size).unwrap(), &p, &cfg, 0.0).unwrap();
    let c = MeanCurve::new(&p, 0.0).unwrap();
    for (t, f) in &out {
        assert!((f.mean() - c.eval(*t)).abs() <= 5.0 * cfg.resolution(), "t={t}");
    }
}

#[test]
fn pde_keeps_the_equilibrium_fixed() {
    let p = ModelParams::new(0.4, 0.9).unwrap();
    let mut cfg = PdeConfig::new(1.0, vec![0.0, 1.0]);
    cfg.grid_size = 2049;
    let eq = equilibrium_grid(&p, 40, 1_000_000, cfg.grid_size, RngSpec::from_seed(31)).unwrap();
    let out = solve_pde(&eq, &p, &cfg, eq.mean()).unwrap_or_else(|_| {
        // tolerate the empirical mean differing from m_inf by sampling noise
        solve_pde(&eq, &p, &cfg, p.m_inf()).unwrap()
    });
    let change = out[1].1.sup_distance(&out[0].1);
    assert!(change <= 5.0 * cfg.resolution(), "{change}");
}

#[test]
fn gain_on_grid_matches_gain_on_samples() {
    let p = ModelParams::new(0.3, 0.6).unwrap();
    let m = 0.2;
    let f = GridDistribution::from_cdf_fn(uniform_grid(4097), |x| ((x + 1.0) / 2.0).powf(1.7)).unwrap();
    let mut rng = RngSpec::from_seed(41).rng();
    let draws = EmpiricalDistribution::new((0..1_000_000).map(|_| f.sample(&mut rng)).collect()).unwrap();
    let g_emp = draws.apply_gain(&p, m, &mut rng).unwrap();
    let g_grid = gain_grid(&f, &p, m).unwrap();
    let dist = wasserstein(1.0, &g_emp, &g_grid).unwrap();
    // floor: the same distance for a fresh sample of the input law itself
    let fresh = EmpiricalDistribution::new((0..1_000_000).map(|_| f.sample(&mut rng)).collect()).unwrap();
    let floor = wasserstein(1.0, &fresh, &f).unwrap();
    // linear interpolation between grid nodes adds up to one mesh width
    let h = 2.0 / 4096.0;
    assert!(dist <= 2.0 * floor + h, "{dist} vs floor {floor}");
}

#[test]
fn generator_vanishes_on_the_equilibrium() {
    let p = ModelParams::new(0.4, 0.9).unwrap();
    let s = sample_equilibrium(&p, 40, 200_000, RngSpec::from_seed(51)).unwrap();
    let mut rng = RngSpec::from_seed(52).rng();
    for _ in 0..20 {
        let coef: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
        let phi = |x: f64| coef.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let val = generator_apply(phi, &s, &p, p.m_inf());
        // per-sample terms have |·| ≤ 2 max|φ|; their spread gives the sampling error
        let terms: Vec<f64> = s
            .samples()
            .iter()
            .map(|&x| {
                let q = ModelParams::prob_plus(p.m_inf());
                q * phi(p.map_plus(x)) + (1.0 - q) * phi(p.map_minus(x)) - phi(x)
            })
            .collect();
        let (_, se) = mean_se(&terms);
        assert!(val.abs() <= 3.0 * se.max(1e-12) + 1e-12, "{val} vs {se}");
    }
}

#[test]
fn schemes_agree_in_law() {
    let p = ModelParams::new(0.2, 0.7).unwrap();
    let run = |scheme, stream| -> Vec<f64> {
        let cfg = AbmConfig::new(500, 2.0, scheme);
        (0..2000)
            .map(|r| {
                let mut rng = RngSpec::new(61, stream).child(r).rng();
                simulate_abm(&p, &InitialLaw::uniform(), &cfg, &mut rng).unwrap().final_state.opinions().iter().sum::<f64>() / 500.0
            })
            .collect()
    };
    let a = EmpiricalDistribution::new(run(AbmScheme::PairwiseGillespie, 0)).unwrap();
    let b = EmpiricalDistribution::new(run(AbmScheme::ThinnedPerAgent, 1)).unwrap();
    let d = wasserstein(1.0, &a, &b).unwrap();
    let mut rng = RngSpec::new(61, 2).rng();
    let boot = |x: &EmpiricalDistribution, rng: &mut kinopin::SimRng| {
        let s = x.samples();
        EmpiricalDistribution::new((0..s.len()).map(|_| s[rng.random_range(0..s.len())]).collect()).unwrap()
    };
    let floor: f64 = (0..20)
        .map(|_| wasserstein(1.0, &boot(&a, &mut rng), &boot(&b, &mut rng)).unwrap())
        .sum::<f64>()
        / 20.0;
    assert!(d <= 2.0 * floor, "{d} vs floor {floor}");
    let ks = a.ks_two_sample(&b);
    // 0.1% critical value
    assert!(ks < 1.95 * (2.0f64 / 2000.0).sqrt(), "ks {ks}");
}

#[test]
fn exact_mean_holds_for_two_agents() {
    let p = ModelParams::symmetric(0.35).unwrap();
    let cfg = AbmConfig::new(2, 1.5, AbmScheme::PairwiseGillespie).with_record_times(vec![0.5, 1.5]);
    let law = InitialLaw::dirac(0.6).unwrap();
    let runs: Vec<Vec<f64>> = (0..40_000)
        .map(|r| {
            simulate_abm(&p, &law, &cfg, &mut RngSpec::new(71, 0).child(r).rng())
                .unwrap()
                .record
                .mean_opinion
        })
        .collect();
    for (k, t) in [0.5, 1.5].into_iter().enumerate() {
        let (m, se) = mean_se(&runs.iter().map(|r| r[k]).collect::<Vec<_>>());
        assert!((m - 0.6 * (-0.7 * t as f64).exp()).abs() <= 3.0 * se, "t={t}: {m} ± {se}");
    }
}

#[test]
fn w1_quantile_and_cdf_forms_agree() {
    let grid = uniform_grid(2049);
    let f1 = GridDistribution::from_cdf_fn(grid.clone(), |x| ((x + 1.0) / 2.0).powi(2)).unwrap();
    let f2 = GridDistribution::from_cdf_fn(grid.clone(), |x| ((x + 1.0) / 2.0).sqrt()).unwrap();
    let w = wasserstein_grid(1.0, &f1, &f2).unwrap();
    // ∫|F1 − F2| dx by midpoint rule on a much finer mesh
    let n = 400_000;
    let h = 2.0 / n as f64;
    let integral: f64 = (0..n)
        .map(|k| {
            let x = -1.0 + (k as f64 + 0.5) * h;
            (f1.eval(x) - f2.eval(x)).abs() * h
        })
        .sum();
    assert!((w - integral).abs() < 1e-6, "{w} vs {integral}");
}

#[test]
fn grid_and_sample_wasserstein_agree() {
    let f1 = GridDistribution::from_cdf_fn(uniform_grid(1025), |x| ((x + 1.0) / 2.0).powf(0.6)).unwrap();
    let f2 = GridDistribution::from_cdf_fn(uniform_grid(1025), |x| ((x + 1.0) / 2.0).powf(2.5)).unwrap();
    let mut rng = RngSpec::from_seed(81).rng();
    let n = 200_000;
    let s1 = EmpiricalDistribution::new((0..n).map(|_| f1.sample(&mut rng)).collect()).unwrap();
    let s2 = EmpiricalDistribution::new((0..n).map(|_| f2.sample(&mut rng)).collect()).unwrap();
    let g1 = s1.to_grid(&uniform_grid(1025)).unwrap();
    let g2 = s2.to_grid(&uniform_grid(1025)).unwrap();
    let tol = 2.0 * (1.0 / 1025.0 + (n as f64).powf(-0.5));
    for p in [1.0, 2.0] {
        let a = wasserstein(p, &g1, &g2).unwrap();
        let b = wasserstein(p, &s1, &s2).unwrap();
        assert!((a - b).abs() <= tol, "p={p}: {a} vs {b}");
    }
}

#[test]
fn characteristic_function_examples() {
    let xi = XiGrid::log_spaced(1e-3, 1e3, 256).unwrap();
    let dirac = AtomicDistribution::dirac(0.0).unwrap();
    assert!(characteristic_function(&dirac, &xi).iter().all(|z| (z.re - 1.0).abs() < 1e-15 && z.im.abs() < 1e-15));
    let pm = AtomicDistribution::new(vec![(-1.0, 0.5), (1.0, 0.5)]).unwrap();
    for (z, &x) in characteristic_function(&pm, &xi).iter().zip(xi.frequencies()) {
        assert!((z.re - x.cos()).abs() < 1e-12 && z.im.abs() < 1e-12);
    }
    let u = GridDistribution::uniform(65).unwrap();
    for (z, &x) in characteristic_function(&u, &xi).iter().zip(xi.frequencies()) {
        assert!((z.re - x.sin() / x).abs() < 1e-6 && z.im.abs() < 1e-6);
    }
}

#[test]
fn equilibrium_sampler_examples() {
    let p = ModelParams::new(0.4, 0.9).unwrap();
    let s = sample_equilibrium(&p, 40, 200_000, RngSpec::from_seed(91)).unwrap();
    let (m, se) = mean_se(s.samples());
    assert!((m - 0.2).abs() <= 3.0 * se);

    let u = sample_equilibrium(&ModelParams::symmetric(0.5).unwrap(), 40, 1_000_000, RngSpec::from_seed(92)).unwrap();
    assert!(u.sup_distance(&GridDistribution::uniform(2).unwrap()) <= 0.01);
}

#[test]
fn symmetric_cover_cells_carry_equal_mass() {
    let p = ModelParams::symmetric(0.7).unwrap();
    let n = 400_000;
    let s = sample_equilibrium(&p, 40, n, RngSpec::from_seed(93)).unwrap();
    for depth in [1, 3, 5] {
        let cover = support_cover(&p, depth).unwrap();
        let q = 0.5f64.powi(depth as i32);
        let se = (q * (1.0 - q) / n as f64).sqrt();
        let mut total = 0;
        for &(a, b) in &cover.intervals {
            let c = s.count_in_open(a - 1e-12, b + 1e-12);
            total += c;
            // 42 cells in total, so a per-cell 4 SE bound
            assert!((c as f64 / n as f64 - q).abs() <= 4.0 * se, "depth {depth} [{a},{b}] {} vs {q} se {se}", c as f64 / n as f64);
        }
        assert_eq!(total, n);
    }
    // staircase: flat on the first gap
    let g = s.to_grid(&uniform_grid(201)).unwrap();
    assert!((g.eval(-0.35) - g.eval(0.35)).abs() < 1e-12);
}

#[test]
fn fixed_point_residual_separates_uniform_from_equilibrium() {
    let p = ModelParams::symmetric(0.75).unwrap();
    let u = GridDistribution::uniform(4097).unwrap();
    let r = fixed_point_residual(&p, &u, &mut RngSpec::from_seed(1).rng()).unwrap();
    // Q₊ maps Uniform[-1,1] to half-uniform on each end; W₁ = 0.25 exactly
    assert!((r - 0.25).abs() < 1e-9, "{r}");
    let one = ModelParams::symmetric(1.0).unwrap();
    let pm = AtomicDistribution::new(vec![(-1.0, 0.5), (1.0, 0.5)]).unwrap();
    assert_eq!(fixed_point_residual(&one, &pm, &mut RngSpec::from_seed(1).rng()).unwrap(), 0.0);
}

#[test]
fn box_counting_examples() {
    let mut rng = RngSpec::from_seed(94).rng();
    let u = EmpiricalDistribution::new((0..1_000_000).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
    let d = boxcount_dimension(&u, &default_box_scales()).unwrap().dimension();
    assert!((d - 1.0).abs() < 0.05, "{d}");
    for (a, b) in [(0.75, 0.75), (0.4, 0.9)] {
        let p = ModelParams::new(a, b).unwrap();
        let s = sample_equilibrium(&p, 40, 1_000_000, RngSpec::from_seed(95)).unwrap();
        let est = boxcount_dimension(&s, &default_box_scales()).unwrap().dimension();
        assert!((est - hausdorff_dimension(&p).unwrap().dimension).abs() < 0.05, "({a},{b}) {est}");
    }
}

#[test]
fn dimension_sweep_is_monotone() {
    let mus: Vec<f64> = (0..20).map(|k| 0.06 + 0.047 * k as f64).collect();
    let mut prev_row: Option<Vec<Option<f64>>> = None;
    for &a in &mus {
        let row: Vec<Option<f64>> = mus
            .iter()
            .map(|&b| {
                let p = ModelParams::new(a, b).unwrap();
                hausdorff_dimension(&p).ok().map(|r| {
                    assert!(r.residual <= 1e-12);
                    assert!(r.dimension > 0.0 && r.dimension < 1.0);
                    r.dimension
                })
            })
            .collect();
        for w in row.windows(2) {
            if let (Some(x), Some(y)) = (w[0], w[1]) {
                assert!(y < x);
            }
        }
        if let Some(prev) = &prev_row {
            for (x, y) in prev.iter().zip(&row) {
                if let (Some(x), Some(y)) = (x, y) {
                    assert!(y < x);
                }
            }
        }
        prev_row = Some(row);
    }
}

#[test]
fn pde_and_meanfield_agree_at_finite_times() {
    let p = ModelParams::new(0.3, 0.6).unwrap();
    let law = InitialLaw::uniform();
    let cfg = PdeConfig::new(5.0, vec![1.0, 5.0]);
    let pde = solve_pde(&law.to_grid(cfg.grid_size).unwrap(), &p, &cfg, 0.0).unwrap();
    let n = 1_000_000;
    for (k, (t, f)) in pde.iter().enumerate() {
        let mf = sample_meanfield(
            &p,
            0.0,
            &law,
            &MeanFieldConfig {
                t_end: *t,
                n_paths: n,
                record_times: vec![],
            },
            RngSpec::new(101, k as u64),
        )
        .unwrap();
        let w = wasserstein(1.0, &mf.final_law, f).unwrap();
        assert!(w <= 5.0 * (cfg.resolution() + (n as f64).powf(-0.5)), "t={t}: {w}");
    }
}

#[test]
fn gain_is_weakly_contractive() {
    let mut rng = RngSpec::from_seed(111).rng();
    for _ in 0..10 {
        let mu: f64 = rng.random_range(0.05..1.0);
        let p = ModelParams::symmetric(mu).unwrap();
        let a: f64 = rng.random_range(0.3..3.0);
        let b: f64 = rng.random_range(0.3..3.0);
        let r1 = GridDistribution::from_cdf_fn(uniform_grid(4097), |x| ((x + 1.0) / 2.0).powf(a)).unwrap();
        let r2 = GridDistribution::from_cdf_fn(uniform_grid(4097), |x| ((x + 1.0) / 2.0).powf(b)).unwrap();
        let (m1, m2) = (r1.mean(), r2.mean());
        let q1 = gain_grid(&r1, &p, m1).unwrap();
        let q2 = gain_grid(&r2, &p, m2).unwrap();
        let lhs = wasserstein(2.0, &q1, &q2).unwrap().powi(2);
        let rhs = 2.0 * mu * mu * (m1 - m2).abs() + (1.0 - mu).powi(2) * wasserstein(2.0, &r1, &r2).unwrap().powi(2);
        assert!(lhs <= rhs + 1e-4, "W2: {lhs} > {rhs}");
        let lhs1 = wasserstein(1.0, &q1, &q2).unwrap();
        let rhs1 = 2.0 * mu * (m1 - m2).abs() / 2.0 + (1.0 - mu) * wasserstein(1.0, &r1, &r2).unwrap();
        assert!(lhs1 <= rhs1 + mu * (m1 - m2).abs() + 1e-4, "W1: {lhs1} > {rhs1}");
    }
}

#[test]
fn two_copy_distance_decreases() {
    let p = ModelParams::symmetric(0.4).unwrap();
    let times: Vec<f64> = (0..=10).map(|k| k as f64).collect();
    let a = InitialLaw::dirac(0.8).unwrap();
    let b = InitialLaw::uniform();
    let runs: Vec<Vec<(f64, f64)>> = (0..200)
        .map(|r| {
            let s = RngSpec::new(121, 0).child(r);
            let seeds = TwoCopySeeds {
                init_a: s.child(0),
                init_b: s.child(1),
                dynamics: s.child(2),
            };
            two_copy_run(&p, 500, &a, &b, &times, seeds).unwrap()
        })
        .collect();
    for j in 1..times.len() {
        let d: Vec<f64> = runs.iter().map(|r| r[j].1 - r[j - 1].1).collect();
        let (m, se) = mean_se(&d);
        assert!(m <= 3.0 * se, "t={}: increment {m} ± {se}", times[j]);
    }
    let same = TwoCopySeeds {
        init_a: RngSpec::new(1, 1),
        init_b: RngSpec::new(1, 1),
        dynamics: RngSpec::new(1, 2),
    };
    let d = two_copy_run(&p, 100, &b, &b, &times, same).unwrap();
    assert!(d.iter().all(|&(_, v)| v == 0.0));
}
