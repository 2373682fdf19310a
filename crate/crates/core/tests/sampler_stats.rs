use rpi_meter::rpi::{Region, Resolution};
use rpi_meter::sampler::{cell_spread, empirical_stats, sample_outputs, FieldConfiguration};

fn unit() -> (Region, Resolution) {
    (Region::new(1.0, 1.0).unwrap(), Resolution::uniform(2f64.sqrt()).unwrap())
}

#[test]
fn one_cell_moments() {
    // δ = 2 at K = 1: each component has variance δ²/4 = 1
    let (r, res) = unit();
    let cl = FieldConfiguration::zeros(1).unwrap();
    let s = sample_outputs(&cl, &r, &res, 100_000, 2024).unwrap();
    let st = empirical_stats(&s, &cl).unwrap();
    for v in [st.per_component_sd_e, st.per_component_sd_h, st.norm_sq_e, st.norm_sq_h] {
        assert!((v - 1.0).abs() < 0.02, "{v}");
    }
    assert!((st.vector_norm_sq_e() - 3.0).abs() < 0.06);
}

#[test]
fn spread_grows_with_cell_count() {
    let (r, res) = unit();
    let cl = FieldConfiguration::zeros(9).unwrap();
    let s = sample_outputs(&cl, &r, &res, 20_000, 3).unwrap();
    let st = empirical_stats(&s, &cl).unwrap();
    assert_eq!(cell_spread(&r, &res, 9).sigma_e, 3.0);
    assert!((st.per_component_sd_e - 3.0).abs() < 0.06);
}

#[test]
fn seeds_agree_within_monte_carlo_error() {
    let (r, res) = unit();
    let cl = FieldConfiguration::zeros(1).unwrap();
    let n = 50_000;
    let a = empirical_stats(&sample_outputs(&cl, &r, &res, n, 11).unwrap(), &cl).unwrap();
    let b = empirical_stats(&sample_outputs(&cl, &r, &res, n, 12).unwrap(), &cl).unwrap();
    // the mean of 3n squared unit normals has standard error sqrt(2/(3n))
    let se = (2.0 / (3.0 * n as f64)).sqrt();
    assert!((a.norm_sq_e - b.norm_sq_e).abs() < 4.0 * se * 2f64.sqrt());
}

#[test]
fn unbiased_around_classical_field() {
    let r = Region::new(1.0, 1.0).unwrap();
    let res = Resolution::uniform(1e4).unwrap();
    let cl = FieldConfiguration::uniform(2, [3.0, -1.0, 7.0], [0.5, 0.5, -2.0]).unwrap();
    let n = 100_000;
    let st = empirical_stats(&sample_outputs(&cl, &r, &res, n, 9).unwrap(), &cl).unwrap();
    let band = 3.0 * cell_spread(&r, &res, 2).sigma_e / (n as f64).sqrt();
    for c in 0..2 {
        for i in 0..3 {
            assert!((st.empirical_mean.e[c][i] - cl.e[c][i]).abs() < band);
            assert!((st.empirical_mean.h[c][i] - cl.h[c][i]).abs() < band);
        }
    }
}

#[test]
fn stream_independent_of_thread_count() {
    let (r, res) = unit();
    let cl = FieldConfiguration::zeros(2).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sample_outputs(&cl, &r, &res, 5000, 77).unwrap())
    };
    assert_eq!(run(1), run(4));
}
