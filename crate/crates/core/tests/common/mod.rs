#![allow(dead_code)]

use cruled::csurface::{make_c_surface, CSurface};
use cruled::curve::CurveDef;
use cruled::families::{helix, twisted_cubic, Epicycle};
use cruled::frame::Convention;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_helix(rng: &mut ChaCha8Rng) -> (f64, f64, CurveDef) {
    let a = rng.random_range(0.2..=3.0);
    let b = rng.random_range(0.2..=3.0);
    (a, b, helix(a, b, (0.0, 6.0)).unwrap())
}

fn random_epicycle(rng: &mut ChaCha8Rng) -> Epicycle {
    Epicycle {
        amp_x: rng.random_range(0.6..=1.6),
        amp_y: rng.random_range(0.6..=1.6),
        e: rng.random_range(0.02..=0.08),
        k: rng.random_range(2..=3),
    }
}

pub fn random_planar(rng: &mut ChaCha8Rng) -> CurveDef {
    random_epicycle(rng).planar((0.0, 2.0)).unwrap()
}

/// A non-planar, non-helical curve with `|g|` clearly nonzero somewhere.
pub fn random_general(rng: &mut ChaCha8Rng) -> CSurface {
    loop {
        let curve = if rng.random_bool(0.5) {
            let coeffs = [
                rng.random_range(-0.6..=0.6),
                rng.random_range(-0.6..=0.6),
                rng.random_range(-0.6..=0.6),
            ];
            random_epicycle(rng)
                .lifted(coeffs, rng.random_range(1.0..=3.0), (0.0, 2.0))
                .unwrap()
        } else {
            twisted_cubic(
                rng.random_range(0.5..=1.5),
                rng.random_range(0.3..=1.0),
                (-1.0, 1.0),
            )
            .unwrap()
        };
        let surface = make_c_surface(curve, Convention::Smooth, (-1.0, 1.0)).unwrap();
        let class = surface.classify(32, 1e-9).unwrap();
        if class.max_g >= 1e-3 && class.max_sin_theta >= 1e-3 && surface.trim_log().is_empty() {
            return surface;
        }
    }
}

/// A parameter at least `margin` inside the untrimmed domain.
pub fn interior_s(rng: &mut ChaCha8Rng, surface: &CSurface, margin: f64) -> f64 {
    let d = surface.domain();
    loop {
        let s = rng.random_range(d.start + margin..=d.end - margin);
        if d.contains(s) {
            return s;
        }
    }
}
