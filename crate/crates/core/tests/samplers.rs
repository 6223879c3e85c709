mod common;

use std::sync::Arc;

use common::*;
use ksub_core::generators::karate;
use ksub_core::loss::loss;
use ksub_core::sampler::{
    degree_prop_sampling, degree_prop_sampling_plus, mcmc_sampling, psrw_sampling, rng_from_seed,
    uniform_sampling, Variant,
};
use ksub_core::{
    enumerate_states, Error, Graph, Method, Sampler, SamplerConfig, StateGraph, StepPlan,
};

const ALPHA: f64 = 0.001;

fn cfg(seed: u64, step_ratio: f64) -> SamplerConfig {
    SamplerConfig {
        seed,
        step_ratio,
        ..SamplerConfig::default()
    }
}

fn tables(g: &Graph, levels: impl IntoIterator<Item = usize>) -> Vec<Arc<StateGraph>> {
    levels
        .into_iter()
        .map(|k| Arc::new(enumerate_states(g, k).unwrap()))
        .collect()
}

fn sampler<'g>(
    g: &'g Graph,
    k: usize,
    m: Method,
    c: SamplerConfig,
    t: &[Arc<StateGraph>],
) -> Sampler<'g> {
    let mut b = Sampler::builder(g, k, m).config(c);
    for t in t {
        b = b.table(t.clone());
    }
    b.build().unwrap()
}

fn draw(s: &mut Sampler, n: usize, seed: u64) -> Vec<ksub_core::SubgraphState> {
    let mut rng = rng_from_seed(seed);
    (0..n).map(|_| s.sample(&mut rng).unwrap().state).collect()
}

fn assert_uniform(g: &Graph, k: usize, m: Method, seed: u64) {
    let sg = enumerate_states(g, k).unwrap();
    let t = tables(g, 2..=k);
    let mut s = sampler(g, k, m, cfg(seed, 1.0), &t);
    let n = 1000 * sg.len();
    let counts = tally(sg.states(), draw(&mut s, n, seed));
    let probs = vec![1.0 / sg.len() as f64; sg.len()];
    let p = chi_square_p(&counts, &probs);
    assert!(
        p > ALPHA,
        "{m} on n={} k={k}: p = {p}, counts {counts:?}",
        g.node_count()
    );
}

#[test]
fn tiny_graphs_are_sampled_uniformly() {
    for m in Method::ALL {
        assert_uniform(&path(4), 3, m, 11);
        assert_uniform(&complete(4), 3, m, 12);
        assert_uniform(&star(5), 3, m, 13);
    }
    for m in [Method::Rss, Method::RssPlus] {
        assert_uniform(&star(5), 4, m, 14);
    }
}

#[test]
fn edges_at_k2() {
    let p4 = path(4);
    let c = cfg(3, 1.0);
    let mut rng = rng_from_seed(3);
    let states = enumerate_states(&p4, 2).unwrap();
    let uni = (0..3000).map(|_| uniform_sampling(&p4, 2, &c, &mut rng, Variant::Rss).unwrap());
    let p = chi_square_p(&tally(states.states(), uni), &[1.0 / 3.0; 3]);
    assert!(p > ALPHA);
    let dp = (0..4000).map(|_| degree_prop_sampling(&p4, 2, &c, &mut rng).unwrap());
    let p = chi_square_p(&tally(states.states(), dp), &[0.25, 0.5, 0.25]);
    assert!(p > ALPHA);
    let dpp = (0..4000).map(|_| degree_prop_sampling_plus(&p4, 2, &c, &mut rng).unwrap());
    let p = chi_square_p(&tally(states.states(), dpp), &[0.25, 0.5, 0.25]);
    assert!(p > ALPHA);
}

#[test]
fn one_shot_operations_return_valid_states() {
    let g = karate();
    let c = cfg(5, 0.01);
    let mut rng = rng_from_seed(5);
    for _ in 0..20 {
        for s in [
            mcmc_sampling(&g, 3, &c, &mut rng).unwrap(),
            psrw_sampling(&g, 3, &c, &mut rng).unwrap(),
            uniform_sampling(&g, 4, &c, &mut rng, Variant::Rss).unwrap(),
            uniform_sampling(&g, 4, &c, &mut rng, Variant::RssPlus).unwrap(),
            degree_prop_sampling(&g, 3, &c, &mut rng).unwrap(),
            degree_prop_sampling_plus(&g, 3, &c, &mut rng).unwrap(),
        ] {
            assert!(s.is_valid(&g));
        }
    }
}

#[test]
fn karate_k3_recursive_samplers_are_within_epsilon() {
    let g = karate();
    let sg = enumerate_states(&g, 3).unwrap();
    let t = tables(&g, [2]);
    for m in [Method::Rss, Method::RssPlus] {
        let mut s = sampler(&g, 3, m, cfg(21, 1.0), &t);
        let counts = tally(sg.states(), draw(&mut s, 1000 * sg.len(), 21));
        let l = loss(counts.iter().copied(), (1000 * sg.len()) as u64, sg.len()).unwrap();
        assert!(l <= 0.05, "{m}: loss {l}");
        let p = chi_square_p(&counts, &vec![1.0 / sg.len() as f64; sg.len()]);
        assert!(p > ALPHA, "{m}: p = {p}");
    }
}

#[test]
fn degree_proportional_chains_on_karate() {
    let g = karate();
    let sg = enumerate_states(&g, 3).unwrap();
    let t = tables(&g, [2, 3]);
    let probs: Vec<f64> = (0..sg.len())
        .map(|i| sg.degree(i) as f64 / sg.total_degree() as f64)
        .collect();
    let n = 100 * sg.len();
    let mut rss = sampler(&g, 3, Method::Rss, cfg(31, 0.1), &t);
    let mut rng = rng_from_seed(31);
    let draws = (0..n)
        .map(|_| rss.degree_prop(3, &mut rng).unwrap())
        .collect::<Vec<_>>();
    let p = chi_square_p(&tally(sg.states(), draws), &probs);
    assert!(p > ALPHA, "rss chain p = {p}");
    let mut plus = sampler(&g, 3, Method::RssPlus, cfg(32, 0.1), &t);
    let draws = (0..n)
        .map(|_| plus.degree_prop_plus(3, &mut rng).unwrap())
        .collect::<Vec<_>>();
    let p = chi_square_p(&tally(sg.states(), draws), &probs);
    assert!(p > ALPHA, "rss+ chain p = {p}");
}

#[test]
fn same_seed_same_samples() {
    let g = karate();
    for m in Method::ALL {
        let r = if matches!(m, Method::Mcmc | Method::Psrw) {
            1e-6
        } else {
            1e-3
        };
        let a = draw(&mut sampler(&g, 4, m, cfg(7, r), &[]), 30, 7);
        let b = draw(&mut sampler(&g, 4, m, cfg(7, r), &[]), 30, 7);
        let c = draw(&mut sampler(&g, 4, m, cfg(7, r), &[]), 30, 8);
        assert_eq!(a, b, "{m}");
        assert_ne!(a, c, "{m}");
    }
}

#[test]
fn tables_do_not_change_the_sample_sequence() {
    let g = karate();
    let t = tables(&g, 2..=4);
    for m in Method::ALL {
        let c = cfg(
            9,
            if matches!(m, Method::Mcmc | Method::Psrw) {
                1e-5
            } else {
                0.01
            },
        );
        let mut plain = sampler(&g, 4, m, c, &[]);
        let mut cached = sampler(&g, 4, m, c, &t);
        assert_eq!(draw(&mut plain, 40, 9), draw(&mut cached, 40, 9), "{m}");
        assert_eq!(plain.counters(), cached.counters(), "{m}");
    }
}

#[test]
fn half_of_all_steps_are_lazy() {
    let g = karate();
    let t = tables(&g, 2..=3);
    for m in Method::ALL {
        // the recursive samplers run no chain at k = 3
        let (k, r) = if matches!(m, Method::Rss | Method::RssPlus) {
            (4, 0.1)
        } else {
            (3, 0.005)
        };
        let mut s = sampler(&g, k, m, cfg(17, r), &t);
        draw(&mut s, 200, 17);
        let c = *s.counters();
        let n = c.steps as f64;
        assert!(n > 10_000.0, "{m}: only {n} steps");
        let dev = (c.lazy_stays as f64 - n / 2.0).abs();
        assert!(
            dev <= 3.0 * (n / 4.0).sqrt(),
            "{m}: {} lazy of {n}",
            c.lazy_stays
        );
    }
}

#[test]
fn ratio_zero_returns_the_start_distribution() {
    let g = karate();
    let mut s = sampler(&g, 3, Method::Mcmc, cfg(1, 0.0), &[]);
    let mut rng = rng_from_seed(1);
    let x = s.sample(&mut rng).unwrap();
    assert_eq!(x.steps, 0);
    let mut again = rng_from_seed(1);
    assert_eq!(s.start_state(3, &mut again).unwrap(), x.state);
}

#[test]
fn invalid_requests_fail_up_front() {
    let g = karate();
    let c = SamplerConfig::default();
    assert!(matches!(
        Sampler::new(&g, 2, Method::Psrw, c),
        Err(Error::InvalidK { .. })
    ));
    assert!(matches!(
        Sampler::new(&path(4), 4, Method::Rss, c),
        Err(Error::InvalidK { .. })
    ));
    assert!(matches!(
        Sampler::new(&g, 13, Method::Rss, c),
        Err(Error::KTooLarge { .. })
    ));
    assert!(matches!(
        Sampler::new(&g, 1, Method::Mcmc, c),
        Err(Error::InvalidK { .. })
    ));
    assert!(matches!(
        Sampler::new(&g, 12, Method::Mcmc, c),
        Err(Error::StepOverflow { .. })
    ));
    let capped = SamplerConfig {
        max_steps: Some(100),
        ..c
    };
    assert_eq!(
        Sampler::new(&g, 12, Method::Mcmc, capped)
            .unwrap()
            .plan()
            .at(12),
        100
    );
    let bad = SamplerConfig { epsilon: 1.0, ..c };
    assert!(Sampler::new(&g, 3, Method::Rss, bad).is_err());
    let bad = SamplerConfig {
        step_ratio: 1.5,
        ..c
    };
    assert!(Sampler::new(&g, 3, Method::Rss, bad).is_err());
    let disconnected = Graph::from_dense_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
    assert_eq!(
        Sampler::new(&disconnected, 3, Method::Mcmc, c).err(),
        Some(Error::Disconnected)
    );
    // recursive sampling needs no diameter
    assert!(Sampler::new(&disconnected, 2, Method::Rss, c).is_ok());
    let explicit = Sampler::builder(&g, 3, Method::Mcmc)
        .plan(StepPlan::fixed(5))
        .build()
        .unwrap();
    assert_eq!(explicit.plan().at(3), 5);
}
