//! Parametric normals against central-difference cross products, both on
//! the canonical surfaces and through the full deformation pipeline.

mod common;

use nalgebra::{Point3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cosine, fd_normal, se_point, sp_point, OracleDeform};
use superq::normals::{fill_normals, se_normal, sp_normal, transform_normals};
use superq::params::SuperquadricParams;
use superq::surface::SampledSurface;

const FD_STEP: f64 = 1e-5;

/// Angles whose sine and cosine both stay away from zero.
fn draw_angle(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let t = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        if t.cos().abs() > 1e-3 && t.sin().abs() > 1e-3 {
            return t;
        }
    }
}

fn draw_scales(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.3..3.0),
    ]
}

#[test]
fn se_normals_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 1.0;
    for _ in 0..500 {
        let a = draw_scales(&mut rng);
        let eps = [rng.gen_range(0.05..2.0), rng.gen_range(0.05..2.0)];
        let eta = draw_angle(&mut rng).clamp(-1.5, 1.5);
        let omega = draw_angle(&mut rng);

        let params = SuperquadricParams::superellipsoid(a[0], a[1], a[2], eps[0], eps[1]);
        let n = se_normal(eta, omega, &params).unwrap();
        let fd = fd_normal(&|e, o| se_point(e, o, a, eps), eta, omega, FD_STEP);
        worst = worst.min(cosine(&n, &fd));
    }
    assert!(worst >= 0.999, "worst cosine {worst}");
}

#[test]
fn sp_normals_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 1.0;
    for _ in 0..500 {
        let a = draw_scales(&mut rng);
        let eps = [rng.gen_range(0.2..2.0), rng.gen_range(0.05..2.0)];
        let u = rng.gen_range(0.05..0.999);
        let omega = draw_angle(&mut rng);

        let params = SuperquadricParams::superparaboloid(a[0], a[1], a[2], eps[0], eps[1]);
        let n = sp_normal(u, omega, &params).unwrap();
        let fd = fd_normal(&|uu, o| sp_point(uu, o, a, eps), u, omega, FD_STEP);
        worst = worst.min(cosine(&n, &fd));
    }
    assert!(worst >= 0.999, "worst cosine {worst}");
}

#[test]
fn se_example_shape_normal_cosine() {
    // eps = (0.5, 1.5), scales (1, 2, 3), parameter point (0.7, 0.9)
    let params = SuperquadricParams::superellipsoid(1.0, 2.0, 3.0, 0.5, 1.5);
    let n = se_normal(0.7, 0.9, &params).unwrap();
    let fd = fd_normal(
        &|e, o| se_point(e, o, [1.0, 2.0, 3.0], [0.5, 1.5]),
        0.7,
        0.9,
        FD_STEP,
    );
    assert!(cosine(&n, &fd) >= 0.999);
}

#[test]
fn sp_example_shape_normal_cosine() {
    let params = SuperquadricParams::superparaboloid(1.0, 1.0, 1.0, 1.0, 1.0);
    let n = sp_normal(0.5, 0.3, &params).unwrap();
    let fd = fd_normal(
        &|u, o| sp_point(u, o, [1.0, 1.0, 1.0], [1.0, 1.0]),
        0.5,
        0.3,
        FD_STEP,
    );
    assert!(cosine(&n, &fd) >= 0.999);
}

/// Build a one-point canonical surface for a given parameter pair.
fn single_point_surface(params: &SuperquadricParams, p0: f64, p1: f64) -> SampledSurface {
    let a = [params.a1, params.a2, params.a3];
    let eps = [params.eps1, params.eps2];
    let pt = match params.kind {
        superq::SuperquadricKind::Superellipsoid => se_point(p0, p1, a, eps),
        superq::SuperquadricKind::Superparaboloid => sp_point(p0, p1, a, eps),
    };
    let mut surface = SampledSurface {
        points: vec![Point3::from(pt)],
        normals: None,
        param_coords: vec![(p0, p1)],
        params: params.clone(),
    };
    fill_normals(&mut surface).unwrap();
    surface
}

#[test]
fn taper_transform_matches_composed_finite_differences() {
    // sphere point (0.6, 0, 0.8) tapered with Kx = 0.5
    let params = SuperquadricParams::superellipsoid(1.0, 1.0, 1.0, 1.0, 1.0).with_taper(0.5, 0.0);
    let eta = 0.8_f64.asin();
    let surface = single_point_surface(&params, eta, 0.0);
    let transformed = transform_normals(&surface).unwrap()[0];

    let deform = OracleDeform {
        kx: 0.5,
        ky: 0.0,
        a3: 1.0,
        bend_k: None,
        euler: (0.0, 0.0, 0.0),
        translation: Vector3::zeros(),
    };
    let composed = |e: f64, o: f64| deform.apply(se_point(e, o, [1.0, 1.0, 1.0], [1.0, 1.0]));
    let fd = fd_normal(&composed, eta, 0.0, FD_STEP);
    assert!(cosine(&transformed, &fd) >= 0.999);
}

#[test]
fn full_pipeline_normals_match_composed_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst: f64 = 1.0;
    for trial in 0..100 {
        let a = draw_scales(&mut rng);
        let se = trial % 2 == 0;
        let eps = if se {
            [rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0)]
        } else {
            [rng.gen_range(0.3..2.0), rng.gen_range(0.1..2.0)]
        };
        let kx = rng.gen_range(-0.8..0.8);
        let ky = rng.gen_range(-0.8..0.8);
        let bend = rng.gen_range(1.0..3.0) * a[2];
        let euler = (
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-3.0..3.0),
        );
        let translation = Vector3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );

        let base = if se {
            SuperquadricParams::superellipsoid(a[0], a[1], a[2], eps[0], eps[1])
        } else {
            SuperquadricParams::superparaboloid(a[0], a[1], a[2], eps[0], eps[1])
        };
        let params = base
            .with_taper(kx, ky)
            .with_bend(bend)
            .with_pose(euler, translation);

        let (p0, p1) = if se {
            (draw_angle(&mut rng).clamp(-1.5, 1.5), draw_angle(&mut rng))
        } else {
            (rng.gen_range(0.05..0.999), draw_angle(&mut rng))
        };

        let surface = single_point_surface(&params, p0, p1);
        let transformed = transform_normals(&surface).unwrap()[0];

        let deform = OracleDeform {
            kx,
            ky,
            a3: a[2],
            bend_k: Some(bend),
            euler,
            translation,
        };
        let composed = |s: f64, t: f64| {
            let pt = if se {
                se_point(s, t, a, eps)
            } else {
                sp_point(s, t, a, eps)
            };
            deform.apply(pt)
        };
        // the translation cancels in the differences; orientation of the
        // cross product is preserved because all the maps keep det > 0
        let fd = fd_normal(&composed, p0, p1, FD_STEP);
        let c = cosine(&transformed, &fd);
        worst = worst.min(c);
        assert!(
            c >= 0.999,
            "trial {trial}: cosine {c} (se={se}, eps={eps:?}, p=({p0}, {p1}))"
        );
    }
    assert!(worst >= 0.999, "worst cosine {worst}");
}

#[test]
fn rotation_only_rotates_normals_exactly() {
    let params = SuperquadricParams::superellipsoid(1.0, 2.0, 0.5, 0.8, 1.2)
        .with_pose((0.4, 1.0, -0.7), Vector3::new(5.0, -1.0, 2.0));
    let surface = single_point_surface(&params, 0.6, 1.1);
    let rotated = transform_normals(&surface).unwrap()[0];
    let rot = superq::deform::rotation_zyz(0.4, 1.0, -0.7);
    let expected = rot * surface.normals.as_ref().unwrap()[0];
    assert!((rotated - expected).norm() < 1e-12);
    assert!((rotated.norm() - 1.0).abs() < 1e-12);
}
