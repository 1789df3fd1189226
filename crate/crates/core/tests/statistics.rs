use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tailrisk_core::analysis::bounds::{
    bound_anytime, bound_k_armed, bound_k_armed_optimal, bound_linear, neat_form_bound,
};
use tailrisk_core::analysis::{exceedance, threshold_grid, wilson_interval, NeatVariant, WILSON_Z95};
use tailrisk_core::scenarios::GridPolicy;
use tailrisk_core::sim::collect;
use tailrisk_core::{BanditInstance, Environment, PolicySpec, RunConfig};

fn run(means: Vec<f64>, sigma0: f64, horizon: u64, policy: PolicySpec, replications: u64) -> Vec<tailrisk_core::EpisodeResult> {
    let cfg = RunConfig {
        environment: Environment::Mab(BanditInstance::new(means, sigma0, horizon).unwrap()),
        policy,
        replications,
        master_seed: 77,
        record_trace: false,
    };
    collect(&cfg, 2).unwrap()
}

#[test]
fn noise_sum_is_sub_gaussian() {
    let (t, sigma0, r) = (400u64, 1.5, 20_000u64);
    for policy in [GridPolicy::Ucb.spec(0.2, 3), GridPolicy::Ts.spec(0.4, 3), PolicySpec::Uniform] {
        let res = run(vec![0.1, 0.5, 0.9], sigma0, t, policy, r);
        let abs: Vec<f64> = res.iter().map(|e| e.noise_sum.abs()).collect();
        let scale = sigma0 * (t as f64).sqrt();
        let xs = [0.5 * scale, scale, 2.0 * scale];
        for tail in exceedance(&abs, &xs).unwrap() {
            let x = tail.threshold;
            let se = (tail.prob * (1.0 - tail.prob) / r as f64).sqrt();
            let bound = (-x * x / (2.0 * sigma0 * sigma0 * t as f64)).exp();
            assert!(tail.prob <= bound + 3.0 * se, "P(|N| >= {x}) = {} > {bound} + 3 se", tail.prob);
        }
        let mean = res.iter().map(|e| e.noise_sum).sum::<f64>() / r as f64;
        assert!(mean.abs() <= 4.0 * sigma0 * (t as f64 / r as f64).sqrt(), "mean noise {mean}");
    }
}

#[test]
fn zero_noise_means_zero_noise_sum() {
    for p in GridPolicy::ALL {
        for e in run(vec![0.3, 0.6], 0.0, 50, p.spec(0.4, 2), 20) {
            assert_eq!(e.noise_sum, 0.0);
            assert_eq!(e.empirical_regret, e.pseudo_regret);
        }
    }
}

#[test]
fn wilson_covers_at_nominal_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 1000u64;
    for p in [0.01, 0.1, 0.5] {
        let mut hits = 0;
        for _ in 0..1000 {
            let s = (0..n).filter(|_| rng.random_bool(p)).count() as u64;
            let (lo, hi) = wilson_interval(s, n, WILSON_Z95);
            if lo <= p && p <= hi {
                hits += 1;
            }
        }
        assert!(hits >= 930, "coverage {hits}/1000 at p = {p}");
    }
}

type Bound = Box<dyn Fn(f64) -> f64>;

fn all_bounds() -> Vec<(&'static str, f64, Bound)> {
    vec![
        ("k_armed", 500.0, Box::new(|x| bound_k_armed(x, 2, 500, 1.0, 4.0))),
        ("k_armed_small_eta", 500.0, Box::new(|x| bound_k_armed(x, 4, 200, 1.0, 0.01))),
        ("optimal", 500.0, Box::new(|x| bound_k_armed_optimal(x, 4, 500, 1.0, 4.0, 1.0))),
        ("anytime", 500.0, Box::new(|x| bound_anytime(x, 2, 500, 1.0, 4.0))),
        ("linear", 1000.0, Box::new(|x| bound_linear(x, 4, 1000, 1.0, 1.0).unwrap())),
        ("neat_k", 500.0, Box::new(|x| neat_form_bound(x, 2, 500, 1.0, 4.0, NeatVariant::ThmK).raw)),
        ("neat_opt", 500.0, Box::new(|x| neat_form_bound(x, 4, 500, 1.0, 0.5, NeatVariant::ThmKOpt).raw)),
    ]
}

#[test]
fn bounds_are_monotone_and_vacuous_at_origin() {
    for (name, t, f) in all_bounds() {
        assert!(f(0.0) >= 1.0, "{name} at 0 = {}", f(0.0));
        let mut prev = f64::INFINITY;
        // Out to well beyond every shift.
        for x in threshold_grid(0.0, 2000.0 * t, 200) {
            let v = f(x);
            assert!(v.is_finite() && v >= 0.0, "{name}({x}) = {v}");
            assert!(v <= prev * (1.0 + 1e-12), "{name} increases at x = {x}");
            prev = v;
        }
        assert!(f(1e9 * t) < 1e-12, "{name} does not vanish");
    }
}

#[test]
fn anytime_dominates_optimal_at_large_x() {
    for (k, t) in [(2usize, 200u64), (4, 500), (8, 2000)] {
        let tf = t as f64;
        for x in threshold_grid(tf, 50.0 * tf, 100) {
            assert!(bound_anytime(x, k, t, 1.0, 2.0) >= bound_k_armed_optimal(x, k, t, 1.0, 2.0, 0.0));
        }
    }
}

#[test]
fn neat_form_log_slope() {
    // Past the crossover the exponent is y sqrt(eta lnT), and y is affine in
    // x with slope 1 / (8 s K sqrt T) (resp. 1 / (16 s sqrt(K T))).
    let (k, t, eta) = (2usize, 500u64, 4.0);
    let (kf, tf) = (k as f64, t as f64);
    let rate = (eta * tf.ln()).sqrt();
    for (variant, dy) in [
        (NeatVariant::ThmK, 1.0 / (8.0 * kf * tf.sqrt())),
        (NeatVariant::ThmKOpt, 1.0 / (16.0 * (kf * tf).sqrt())),
    ] {
        let xs = threshold_grid(20.0 * tf, 60.0 * tf, 40);
        for w in xs.windows(2) {
            let (a, b) = (neat_form_bound(w[0], k, t, 1.0, eta, variant), neat_form_bound(w[1], k, t, 1.0, eta, variant));
            assert!(a.y.unwrap() > rate);
            let slope = (b.raw.ln() - a.raw.ln()) / (w[1] - w[0]);
            let want = -rate * dy;
            assert!((slope - want).abs() <= 1e-9 * want.abs(), "{variant:?}: {slope} vs {want}");
        }
        let below = neat_form_bound(0.0, k, t, 1.0, eta, variant);
        assert_eq!(below.y, Some(0.0));
    }
}

#[test]
fn cumulative_reward_identity_over_random_configs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let k = rng.random_range(2..=5);
        let t = rng.random_range(10..=300u64);
        let means: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..=1.0)).collect();
        let best = means.iter().copied().fold(0.0, f64::max);
        let p = GridPolicy::ALL[rng.random_range(0..6)].spec(rng.random_range(0.05..1.0), k);
        for e in run(means, rng.random_range(0.0..3.0), t, p, 5) {
            let tol = 1e-9 * t as f64;
            assert_eq!(e.pulls.iter().sum::<u64>(), t);
            assert!((e.empirical_regret - (e.pseudo_regret - e.noise_sum)).abs() <= tol);
            assert!((e.cumulative_reward + e.empirical_regret - best * t as f64).abs() <= tol);
            assert!(e.pseudo_regret >= 0.0);
        }
    }
}
