// grid values are printed at full mpmath precision
#![allow(clippy::excessive_precision)]

use ksub_core::bounds::{bound_degree_prop, bound_mcmc, bound_psrw, bound_rss_plus};
use ksub_core::BoundInputs;
use proptest::prelude::*;

/// (k, Δ, D, |V|, ε, [mcmc, degree_prop, rss_plus, psrw]), evaluated with
/// 50-digit arithmetic.
#[rustfmt::skip]
const GRID: [(usize, usize, usize, usize, f64, [f64; 4]); 20] = [
    (3, 2, 3, 4, 0.05, [3434.2153713185582, 107.35649791370061, 133.72319284173525, 1831.5815313698977]),
    (4, 3, 5, 10, 0.05, [949144.20891642631, 352.58350308763618, 419.12563242139093, 617499.33998738589]),
    (3, 2, 3, 4, 1.0, [1996.2638800126425, 71.407710631052722, 97.774405559087355, 1064.674069340076]),
    (3, 17, 5, 34, 0.05, [47618845.148653889, 1785.6772269729337, 2009.7941338612281, 27210768.656373651]),
    (4, 17, 5, 34, 0.05, [4661994650.9436029, 2899.6127624984851, 3276.6848287230953, 3131972501.1541343]),
    (5, 10, 6, 100, 0.05, [156129499220.96669, 2993.3606208922594, 3315.2482033790795, 108454863477.39966]),
    (5, 30, 4, 1000, 0.01, [456574992919603.33, 13246.37456249851, 14212.03730995897, 302290967323355.83]),
    (6, 50, 7, 10000, 0.1, [38856123444274521000.0, 37961.045879704406, 40111.157242778072, 27779682495848872000.0]),
    (8, 60, 8, 10000, 0.05, [38946204952335529000000000.0, 79538.151699134774, 83530.679459160059, 30491122289325750000000000.0]),
    (3, 5, 2, 12, 0.5, [146661.60833863103, 325.67751993078469, 391.59425725087127, 71689.910158169925]),
    (4, 2, 10, 50, 0.001, [2814969.7431267012, 394.16462147799292, 438.52604103382942, 1765634.4372523361]),
    (6, 16, 10, 10000, 0.05, [52779776394055049.0, 12061.847557800753, 12749.883193984326, 37648699370943655.0]),
    (3, 16, 2, 10, 0.2, [4186370.797444909, 1189.2858434231163, 1400.2194028473934, 2379041.3417402986]),
    (7, 8, 9, 500, 0.05, [1843002325370512.7, 5658.614153163382, 6094.4980265517722, 1400094909687240.9]),
    (5, 2, 2, 6, 0.9, [626514.59140748476, 227.33485909584294, 291.71237559320695, 430932.78417023457]),
    (10, 100, 20, 1000000, 0.05, [742701832582436440000000000000000000.0, 296117.18626435774, 305327.52663633392, 613316296915674410000000000000000000.0]),
    (4, 40, 3, 2000, 0.05, [12312333476065.316, 12311.845096625967, 13199.073487742697, 7046998593399.3103]),
    (3, 3, 3, 8, 0.05, [29918.344351442936, 205.76306656673493, 245.31310895878688, 15459.335699572888]),
    (9, 12, 15, 300, 0.3, [339380592224575170000.0, 12359.551601524888, 13308.752618934135, 282297344097123010000.0]),
    (5, 7, 5, 64, 0.05, [13818505382.729347, 1914.1847026289235, 2139.5060103696975, 9485034097.5142649]),
];

fn inputs(k: usize, delta: usize, diam: usize, n: usize, epsilon: f64) -> BoundInputs {
    BoundInputs {
        k,
        delta,
        diam,
        n,
        epsilon,
    }
}

fn all(b: &BoundInputs) -> [f64; 4] {
    [
        bound_mcmc(b).unwrap().value(),
        bound_degree_prop(b).unwrap().value(),
        bound_rss_plus(b).unwrap().value(),
        bound_psrw(b).unwrap().value(),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn grid_matches_high_precision_values() {
    for (k, delta, diam, n, eps, want) in GRID {
        let got = all(&inputs(k, delta, diam, n, eps));
        for i in 0..4 {
            assert!(
                rel(got[i], want[i]) < 1e-10,
                "bound {i} at {:?}: {} vs {}",
                (k, delta, diam, n, eps),
                got[i],
                want[i]
            );
        }
    }
}

#[test]
fn worked_examples() {
    let b = inputs(3, 2, 3, 4, 0.05);
    let [mcmc, dp, rp, psrw] = all(&b);
    assert!((mcmc - 3434.2).abs() < 0.05);
    assert!((dp - 107.4).abs() < 0.05);
    assert!((rp - 133.72).abs() < 0.005);
    assert!((psrw - 1831.58).abs() < 0.005);
    let rp4 = bound_rss_plus(&inputs(4, 3, 5, 10, 0.05)).unwrap().value();
    assert!((rp4 - 419.1).abs() < 0.05);
    assert!((bound_mcmc(&inputs(3, 2, 3, 4, 1.0)).unwrap().value() - 1996.26).abs() < 0.01);
    // the k=2 degree-proportional bound is finite even though k=2 needs no chain
    assert!(bound_degree_prop(&inputs(2, 3, 3, 10, 0.05))
        .unwrap()
        .value()
        .is_finite());
}

#[test]
fn psrw_below_mcmc_on_grid() {
    for k in 3..=6 {
        for delta in [2, 4, 8, 16] {
            for diam in [2, 5, 10] {
                for n in [10, 100, 1000, 10_000] {
                    let b = inputs(k, delta, diam, n, 0.05);
                    let [mcmc, _, _, psrw] = all(&b);
                    assert!(psrw < mcmc, "{b:?}");
                }
            }
        }
    }
}

#[test]
fn only_walk_bounds_scale_linearly_in_n_and_diameter() {
    let small = all(&inputs(4, 5, 4, 1000, 0.05));
    let big_n = all(&inputs(4, 5, 4, 2000, 0.05));
    let big_d = all(&inputs(4, 5, 8, 1000, 0.05));
    assert!(big_n[0] / small[0] > 2.0);
    assert!(big_n[3] / small[3] > 2.0);
    assert!(big_n[1] / small[1] < 1.2);
    assert!(big_n[2] / small[2] < 1.2);
    assert!(big_d[0] / small[0] > 1.5);
    assert!(big_d[3] / small[3] > 1.5);
    assert_eq!(big_d[1], small[1]);
    assert_eq!(big_d[2], small[2]);
}

fn direct(b: &BoundInputs) -> [f64; 4] {
    let k = b.k as f64;
    let d = b.delta as f64;
    let n = b.n as f64;
    let le = (1.0 / b.epsilon).ln();
    let fact = |x: usize| (1..=x).map(|i| i as f64).product::<f64>();
    [
        0.5 * fact(b.k) * d.powi(b.k as i32) * (b.diam + b.k - 1) as f64 * n * (k * n.ln() + le),
        2.0 * k * d * (k.ln() + d.ln() + k * n.ln() + le),
        2.0 * k * d * (k * n.ln() + 3.0 * k.ln() + d.ln() + le),
        0.5 * fact(b.k - 1)
            * (k - 1.0)
            * d.powi(b.k as i32)
            * (b.diam + b.k - 2) as f64
            * n
            * ((k - 1.0) * n.ln() + (k - 1.0).ln() + d.ln() + le),
    ]
}

fn valid_inputs() -> impl Strategy<Value = BoundInputs> {
    (
        3usize..=8,
        1usize..=200,
        1usize..=30,
        0usize..=100_000,
        1e-6f64..1.0,
    )
        .prop_map(|(k, delta, diam, extra, epsilon)| inputs(k, delta, diam, k + 1 + extra, epsilon))
}

proptest! {
    #[test]
    fn log_space_matches_direct(b in valid_inputs()) {
        let got = all(&b);
        let want = direct(&b);
        for i in 0..4 {
            prop_assert!(want[i].is_finite());
            prop_assert!(rel(got[i], want[i]) < 1e-10, "bound {} {} vs {}", i, got[i], want[i]);
        }
    }

    #[test]
    fn increasing_in_delta_n_and_inverse_epsilon(b in valid_inputs()) {
        let base = all(&b);
        let more_delta = all(&BoundInputs { delta: b.delta + 1, ..b });
        let more_n = all(&BoundInputs { n: b.n * 2, ..b });
        let less_eps = all(&BoundInputs { epsilon: b.epsilon / 2.0, ..b });
        for i in 0..4 {
            prop_assert!(more_delta[i] > base[i]);
            prop_assert!(more_n[i] > base[i]);
            prop_assert!(less_eps[i] > base[i]);
        }
        prop_assert!(base[2] >= base[1]);
    }
}
