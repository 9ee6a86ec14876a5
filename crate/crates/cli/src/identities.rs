//! The identity catalog. Every entry draws random inputs, evaluates both
//! sides of one identity and reports their deviation.
//!
//! Derivative identities come in pairs: `<id>` uses exact tangent
//! propagation and `<id>-fd` the central-difference oracle on the same inputs.

use std::sync::Arc;

use mvfunc_core::functional::{
    bridge_lhs_directional, bridge_lhs_star, catalog, classical_partials, classical_partials_with, lifted_eval,
};
use mvfunc_core::{
    random, DerivMethod, Extensor, Frame, InducedFunctional, Metric, Multivector, MvFunction, ProductKind, ScalarMap,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{HarnessConfig, Suite};
use crate::report::Witness;

/// Which configured tolerance an identity is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tolerance {
    /// `tol_exact`.
    Exact,
    /// `10 × tol_exact`, for identities involving `exp`/`sin`, inverses or frame changes.
    Relaxed,
    /// `tol_fd`.
    Fd,
}

impl Tolerance {
    pub fn value(self, config: &HarnessConfig) -> f64 {
        match self {
            Tolerance::Exact => config.tol_exact,
            Tolerance::Relaxed => 10.0 * config.tol_exact,
            Tolerance::Fd => config.tol_fd,
        }
    }
}

/// Per-run inputs shared by every trial of one identity.
pub struct Ctx {
    pub metric: Arc<Metric>,
    pub n: usize,
    pub method: DerivMethod,
    pub fd_step: f64,
}

pub struct Trial {
    pub dev: f64,
    pub witness: Witness,
}

impl Trial {
    fn new(dev: f64, t: &Extensor, anchors: &[Multivector], direction: Option<&Multivector>) -> Self {
        Trial {
            dev,
            witness: Witness::new(t, anchors, direction),
        }
    }

    fn with(mut self, name: &str, value: &Multivector) -> Self {
        self.witness = self.witness.with(name, value);
        self
    }
}

type Check = dyn Fn(&Ctx, &mut ChaCha8Rng) -> mvfunc_core::Result<Trial> + Send + Sync;

pub struct Identity {
    pub id: String,
    /// Key of the random stream; shared by an identity and its `-fd` twin.
    pub stream: String,
    pub suite: Suite,
    pub tolerance: Tolerance,
    pub finite_difference: bool,
    check: Arc<Check>,
}

impl Identity {
    pub fn run_trial(&self, ctx: &Ctx, rng: &mut ChaCha8Rng) -> mvfunc_core::Result<Trial> {
        (self.check)(ctx, rng)
    }
}

struct Builder(Vec<Identity>);

impl Builder {
    /// Adds `id` and its finite-difference twin `id-fd`.
    fn pair<F>(&mut self, id: String, suite: Suite, tolerance: Tolerance, check: F)
    where
        F: Fn(&Ctx, &mut ChaCha8Rng) -> mvfunc_core::Result<Trial> + Send + Sync + 'static,
    {
        let check: Arc<Check> = Arc::new(check);
        self.0.push(Identity {
            id: id.clone(),
            stream: id.clone(),
            suite,
            tolerance,
            finite_difference: false,
            check: check.clone(),
        });
        self.0.push(Identity {
            id: format!("{id}-fd"),
            stream: id,
            suite,
            tolerance: Tolerance::Fd,
            finite_difference: true,
            check,
        });
    }

    fn single<F>(&mut self, id: &str, suite: Suite, tolerance: Tolerance, check: F)
    where
        F: Fn(&Ctx, &mut ChaCha8Rng) -> mvfunc_core::Result<Trial> + Send + Sync + 'static,
    {
        self.0.push(Identity {
            id: id.to_string(),
            stream: id.to_string(),
            suite,
            tolerance,
            finite_difference: false,
            check: Arc::new(check),
        });
    }
}

fn vector(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Multivector {
    Multivector::random(&ctx.metric, 1, rng).expect("grade 1 exists")
}

fn extensor(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Extensor {
    random::extensor(&ctx.metric, 1, 1, rng).expect("square matrix")
}

fn abs_dev(got: &Multivector, want: &Multivector) -> f64 {
    got.max_abs_diff(want)
}

/// Deviation relative to `max(1, |want|)`.
fn rel_dev(got: &Multivector, want: &Multivector) -> f64 {
    got.max_abs_diff(want) / want.norm_inf().max(1.0)
}

fn scalar(ctx: &Ctx, x: f64) -> Multivector {
    Multivector::from_scalar(&ctx.metric, x)
}

/// A vector-anchored (1,1) functional drawn from the catalog or a random polynomial.
fn random_functional(ctx: &Ctx, rng: &mut ChaCha8Rng) -> InducedFunctional {
    let m = &ctx.metric;
    match rng.random_range(0..7) {
        0 => catalog::image(&vector(ctx, rng)),
        1 => catalog::dot_of_images(&vector(ctx, rng), &vector(ctx, rng)),
        2 => catalog::wedge_of_images(&vector(ctx, rng), &vector(ctx, rng)),
        3 => catalog::trace(&random::frame(m, rng)),
        4 => catalog::bivector(&random::frame(m, rng)),
        5 => {
            let b = vector(ctx, rng);
            catalog::adjoint_image(&b, &random::frame(m, rng))
        }
        _ => polynomial_functional(ctx, 1, rng),
    }
}

fn polynomial_functional(ctx: &Ctx, p: usize, rng: &mut ChaCha8Rng) -> InducedFunctional {
    let expr = random::polynomial_using_all(&ctx.metric, 2, 2, rng);
    let anchors = (0..2)
        .map(|_| Multivector::random(&ctx.metric, p, rng).expect("p ≤ n"))
        .collect();
    InducedFunctional::new(MvFunction::new(2, 1, expr).expect("vars 0 and 1"), anchors, p).expect("valid anchors")
}

/// A scalar-valued (1,1) functional.
fn random_scalar_functional(ctx: &Ctx, rng: &mut ChaCha8Rng) -> InducedFunctional {
    match rng.random_range(0..4) {
        0 => catalog::dot_of_images(&vector(ctx, rng), &vector(ctx, rng)),
        1 => catalog::trace(&random::frame(&ctx.metric, rng)),
        2 => catalog::image_dot(&vector(ctx, rng), &vector(ctx, rng)),
        _ => {
            let base = polynomial_functional(ctx, 1, rng);
            let expr = base.function().expr().clone().grade(0);
            InducedFunctional::new(
                MvFunction::new(2, 1, expr).expect("vars 0 and 1"),
                base.anchors().to_vec(),
                1,
            )
            .expect("valid anchors")
        }
    }
}

/// `t ↦ (t(a¹)·c)`, its square or its exponential.
fn bridge_functional(ctx: &Ctx, rng: &mut ChaCha8Rng) -> (InducedFunctional, Multivector) {
    let a1 = vector(ctx, rng);
    let c = vector(ctx, rng);
    let base = catalog::image_dot(&a1, &c);
    let phi = match rng.random_range(0..3) {
        0 => base,
        1 => base.mapped(ScalarMap::Square),
        _ => base.mapped(ScalarMap::Exp),
    };
    (phi, c)
}

/// The full catalog in report order.
pub fn catalog() -> Vec<Identity> {
    let mut b = Builder(Vec::new());
    paper(&mut b);
    properties(&mut b);
    bridge(&mut b);
    b.0
}

fn paper(b: &mut Builder) {
    use Suite::Paper;
    use Tolerance::{Exact, Relaxed};

    // a·∂_h (h(b)·h(c)) = h((a·b)c + (a·c)b)
    b.pair("eq-7.6a".into(), Paper, Exact, |ctx, rng| {
        let (a, bb, c) = (vector(ctx, rng), vector(ctx, rng), vector(ctx, rng));
        let h = extensor(ctx, rng);
        let phi = catalog::dot_of_images(&bb, &c);
        let got = phi.a_dot_dt_with(&h, &a, ctx.method)?;
        let want = h.apply(&(&c.scale(a.scalar_product(&bb)) + &bb.scale(a.scalar_product(&c))))?;
        Ok(Trial::new(abs_dev(&got, &want), &h, phi.anchors(), Some(&a)))
    });

    // a·∂_h (h(b)∧h(c)) = (n−1) h̲(a⌟(b∧c))
    b.pair("eq-7.6b".into(), Paper, Exact, |ctx, rng| {
        let (a, bb, c) = (vector(ctx, rng), vector(ctx, rng), vector(ctx, rng));
        let h = extensor(ctx, rng);
        let phi = catalog::wedge_of_images(&bb, &c);
        let got = phi.a_dot_dt_with(&h, &a, ctx.method)?;
        let want = h
            .outermorphism()?
            .apply(&a.lc(&bb.wedge(&c)))?
            .scale((ctx.n - 1) as f64);
        Ok(Trial::new(abs_dev(&got, &want), &h, phi.anchors(), Some(&a)))
    });

    // a·∂_h h̲(a¹∧…∧a^k) = (n−k+1) h̲(a⌟(a¹∧…∧a^k)), all k
    b.pair("eq-7.6c".into(), Paper, Exact, |ctx, rng| {
        let a = vector(ctx, rng);
        let h = extensor(ctx, rng);
        let om = h.outermorphism()?;
        let mut worst: Option<Trial> = None;
        for k in 1..=ctx.n {
            let factors: Vec<Multivector> = (0..k).map(|_| vector(ctx, rng)).collect();
            let blade = factors.iter().skip(1).fold(factors[0].clone(), |acc, v| acc.wedge(v));
            let phi = catalog::outer_image(&factors);
            let got = phi.a_dot_dt_with(&h, &a, ctx.method)?;
            let want = om.apply(&a.lc(&blade))?.scale((ctx.n - k + 1) as f64);
            let dev = abs_dev(&got, &want);
            if worst.as_ref().is_none_or(|w| dev > w.dev) {
                worst = Some(Trial::new(dev, &h, &factors, Some(&a)));
            }
        }
        Ok(worst.expect("n ≥ 2"))
    });

    // a·∂_h h(b) = n(a·b)
    b.pair("eq-7.6d".into(), Paper, Exact, |ctx, rng| {
        let (a, bb) = (vector(ctx, rng), vector(ctx, rng));
        let h = extensor(ctx, rng);
        let phi = catalog::image(&bb);
        let got = phi.a_dot_dt_with(&h, &a, ctx.method)?;
        let want = scalar(ctx, ctx.n as f64 * a.scalar_product(&bb));
        Ok(Trial::new(abs_dev(&got, &want), &h, phi.anchors(), Some(&a)))
    });
    for kind in ProductKind::ALL {
        // ∂_h∧h(b) = ∂_h h(b) = nb, ∂_h·h(b) = ∂_h⌟h(b) = 0
        b.pair(format!("eq-7.6d-{kind}"), Paper, Exact, move |ctx, rng| {
            let bb = vector(ctx, rng);
            let h = extensor(ctx, rng);
            let phi = catalog::image(&bb);
            let got = phi.dt_star_with(&h, kind, ctx.method)?;
            let want = match kind {
                ProductKind::Wedge | ProductKind::Geometric => bb.scale(ctx.n as f64),
                ProductKind::Scalar | ProductKind::Lcontract => Multivector::zero(&ctx.metric),
            };
            Ok(Trial::new(abs_dev(&got, &want), &h, phi.anchors(), None))
        });
    }

    // a·∂_h h†(b) = ba
    b.pair("eq-7.6e".into(), Paper, Exact, |ctx, rng| {
        let (a, bb) = (vector(ctx, rng), vector(ctx, rng));
        let h = extensor(ctx, rng);
        let phi = catalog::adjoint_image(&bb, &random::frame(&ctx.metric, rng));
        let got = phi.a_dot_dt_with(&h, &a, ctx.method)?;
        let want = bb.gp(&a);
        Ok(Trial::new(abs_dev(&got, &want), &h, phi.anchors(), Some(&a)).with("b", &bb))
    });
    for kind in ProductKind::ALL {
        // ∂_h∧h†(b) = b, ∂_h·h†(b) = 0, ∂_h⌟h†(b) = (1−n)b, ∂_h h†(b) = (2−n)b
        b.pair(format!("eq-7.6e-{kind}"), Paper, Exact, move |ctx, rng| {
            let bb = vector(ctx, rng);
            let h = extensor(ctx, rng);
            let phi = catalog::adjoint_image(&bb, &random::frame(&ctx.metric, rng));
            let got = phi.dt_star_with(&h, kind, ctx.method)?;
            let n = ctx.n as f64;
            let want = match kind {
                ProductKind::Wedge => bb.clone(),
                ProductKind::Scalar => Multivector::zero(&ctx.metric),
                ProductKind::Lcontract => bb.scale(1.0 - n),
                ProductKind::Geometric => bb.scale(2.0 - n),
            };
            Ok(Trial::new(abs_dev(&got, &want), &h, phi.anchors(), None).with("b", &bb))
        });
    }

    // a·∂_t tr[t] = a
    b.pair("eq-7.6f".into(), Paper, Exact, |ctx, rng| {
        let a = vector(ctx, rng);
        let t = extensor(ctx, rng);
        let phi = catalog::trace(&random::frame(&ctx.metric, rng));
        let got = phi.a_dot_dt_with(&t, &a, ctx.method)?;
        Ok(Trial::new(abs_dev(&got, &a), &t, phi.anchors(), Some(&a)))
    });
    for kind in ProductKind::ALL {
        // ∂_t∧tr[t] = 0, ∂_t·tr[t] = ∂_t⌟tr[t] = ∂_t tr[t] = n
        b.pair(format!("eq-7.6f-{kind}"), Paper, Exact, move |ctx, rng| {
            let t = extensor(ctx, rng);
            let phi = catalog::trace(&random::frame(&ctx.metric, rng));
            let got = phi.dt_star_with(&t, kind, ctx.method)?;
            let want = match kind {
                ProductKind::Wedge => Multivector::zero(&ctx.metric),
                _ => scalar(ctx, ctx.n as f64),
            };
            Ok(Trial::new(abs_dev(&got, &want), &t, phi.anchors(), None))
        });
    }

    // a·∂_t biv[t] = (n−1)a
    b.pair("eq-7.6g".into(), Paper, Exact, |ctx, rng| {
        let a = vector(ctx, rng);
        let t = extensor(ctx, rng);
        let phi = catalog::bivector(&random::frame(&ctx.metric, rng));
        let got = phi.a_dot_dt_with(&t, &a, ctx.method)?;
        let want = a.scale((ctx.n - 1) as f64);
        Ok(Trial::new(abs_dev(&got, &want), &t, phi.anchors(), Some(&a)))
    });
    for kind in ProductKind::ALL {
        // ∂_t∧biv[t] = 0, the other three give (n−1)n
        b.pair(format!("eq-7.6g-{kind}"), Paper, Exact, move |ctx, rng| {
            let t = extensor(ctx, rng);
            let phi = catalog::bivector(&random::frame(&ctx.metric, rng));
            let got = phi.dt_star_with(&t, kind, ctx.method)?;
            let want = match kind {
                ProductKind::Wedge => Multivector::zero(&ctx.metric),
                _ => scalar(ctx, ((ctx.n - 1) * ctx.n) as f64),
            };
            Ok(Trial::new(abs_dev(&got, &want), &t, phi.anchors(), None))
        });
    }

    // a·∂_h h̲(I) = h̲(a⌟I)
    b.pair("eq-7.6h".into(), Paper, Exact, |ctx, rng| {
        let a = vector(ctx, rng);
        let h = extensor(ctx, rng);
        let pseudo = random::pseudoscalar(&ctx.metric, rng);
        let phi = catalog::pseudoscalar_image(&pseudo, &random::frame(&ctx.metric, rng));
        let got = phi.a_dot_dt_with(&h, &a, ctx.method)?;
        let want = h.outermorphism()?.apply(&a.lc(&pseudo))?;
        Ok(Trial::new(abs_dev(&got, &want), &h, phi.anchors(), Some(&a)).with("pseudoscalar", &pseudo))
    });

    // a·∂_h det[h] = det[h] h*(a)
    b.pair("eq-7.6i".into(), Paper, Relaxed, |ctx, rng| {
        let a = vector(ctx, rng);
        let h = random::invertible_extensor(&ctx.metric, rng);
        let pseudo = random::pseudoscalar(&ctx.metric, rng);
        let phi = catalog::determinant_with(&pseudo, &random::frame(&ctx.metric, rng))?;
        let got = phi.a_dot_dt_with(&h, &a, ctx.method)?;
        let want = h.adjoint_inverse()?.apply(&a)?.scale(h.det()?);
        Ok(Trial::new(rel_dev(&got, &want), &h, phi.anchors(), Some(&a)).with("pseudoscalar", &pseudo))
    });
    for kind in ProductKind::ALL {
        // ∂_h·det = ∂_h⌟det = det tr[h⁻¹], ∂_h∧det = det biv[h⁻¹], ∂_h det = det (tr[h⁻¹] + biv[h⁻¹])
        b.pair(format!("eq-7.6i-{kind}"), Paper, Relaxed, move |ctx, rng| {
            let h = random::invertible_extensor(&ctx.metric, rng);
            let pseudo = random::pseudoscalar(&ctx.metric, rng);
            let phi = catalog::determinant_with(&pseudo, &random::frame(&ctx.metric, rng))?;
            let got = phi.dt_star_with(&h, kind, ctx.method)?;
            let inv = h.inverse()?;
            let det = h.det()?;
            let tr = scalar(ctx, inv.trace()?);
            let biv = inv.biv()?;
            let want = match kind {
                ProductKind::Scalar | ProductKind::Lcontract => tr.scale(det),
                ProductKind::Wedge => biv.scale(det),
                ProductKind::Geometric => (&tr + &biv).scale(det),
            };
            Ok(Trial::new(rel_dev(&got, &want), &h, phi.anchors(), None).with("pseudoscalar", &pseudo))
        });
    }

    // Σ_j h*(e_j)∧e^j = −biv[h⁻¹], the sign step between the curl of det and biv[h⁻¹]
    b.single("example5-biv-sign", Paper, Exact, |ctx, rng| {
        let h = random::invertible_extensor(&ctx.metric, rng);
        let frame = random::frame(&ctx.metric, rng);
        let star = h.adjoint_inverse()?;
        let mut got = Multivector::zero(&ctx.metric);
        for (v, r) in frame.vectors().iter().zip(frame.reciprocal()) {
            got += &star.apply(v)?.wedge(r);
        }
        let want = h.inverse()?.biv()?.scale(-1.0);
        Ok(Trial::new(rel_dev(&got, &want), &h, frame.vectors(), None))
    });
}

fn properties(b: &mut Builder) {
    use Suite::Properties;
    use Tolerance::{Exact, Relaxed};

    // Linearity in the direction.
    b.pair("eq-7.3c".into(), Properties, Exact, |ctx, rng| {
        let phi = random_functional(ctx, rng);
        let t = extensor(ctx, rng);
        let (u, v) = (vector(ctx, rng), vector(ctx, rng));
        let (alpha, beta): (f64, f64) = (rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0));
        let dir = &u.scale(alpha) + &v.scale(beta);
        let got = phi.a_dot_dt_with(&t, &dir, ctx.method)?;
        let want =
            &phi.a_dot_dt_with(&t, &u, ctx.method)?.scale(alpha) + &phi.a_dot_dt_with(&t, &v, ctx.method)?.scale(beta);
        Ok(Trial::new(rel_dev(&got, &want), &t, phi.anchors(), Some(&dir)))
    });

    // A·∂_t (λF) = λ A·∂_t F
    b.pair("eq-7.5a".into(), Properties, Exact, |ctx, rng| {
        let phi = random_functional(ctx, rng);
        let t = extensor(ctx, rng);
        let a = vector(ctx, rng);
        let lambda: f64 = rng.random_range(-3.0..=3.0);
        let got = phi.scaled(lambda).a_dot_dt_with(&t, &a, ctx.method)?;
        let want = phi.a_dot_dt_with(&t, &a, ctx.method)?.scale(lambda);
        Ok(Trial::new(rel_dev(&got, &want), &t, phi.anchors(), Some(&a)))
    });

    // A·∂_t (F M) = (A·∂_t F) M
    b.pair("eq-7.5b".into(), Properties, Exact, |ctx, rng| {
        let phi = random_functional(ctx, rng);
        let t = extensor(ctx, rng);
        let a = vector(ctx, rng);
        let m = Multivector::random_mixed(&ctx.metric, rng);
        let got = phi.times_right(&m)?.a_dot_dt_with(&t, &a, ctx.method)?;
        let want = phi.a_dot_dt_with(&t, &a, ctx.method)?.gp(&m);
        Ok(Trial::new(rel_dev(&got, &want), &t, phi.anchors(), Some(&a)).with("m", &m))
    });

    // A·∂_t (F + G) = A·∂_t F + A·∂_t G
    b.pair("eq-7.5c".into(), Properties, Exact, |ctx, rng| {
        let f = random_functional(ctx, rng);
        let g = random_functional(ctx, rng);
        let t = extensor(ctx, rng);
        let a = vector(ctx, rng);
        let sum = f.plus(&g)?;
        let got = sum.a_dot_dt_with(&t, &a, ctx.method)?;
        let want = &f.a_dot_dt_with(&t, &a, ctx.method)? + &g.a_dot_dt_with(&t, &a, ctx.method)?;
        Ok(Trial::new(rel_dev(&got, &want), &t, sum.anchors(), Some(&a)))
    });

    // A·∂_t (Φ G) = (A·∂_t Φ) G + Φ (A·∂_t G)
    b.pair("eq-7.5d".into(), Properties, Exact, |ctx, rng| {
        let phi = random_scalar_functional(ctx, rng);
        let g = random_functional(ctx, rng);
        let t = extensor(ctx, rng);
        let a = vector(ctx, rng);
        let prod = phi.times(&g)?;
        let got = prod.a_dot_dt_with(&t, &a, ctx.method)?;
        let want = &phi.a_dot_dt_with(&t, &a, ctx.method)?.gp(&g.evaluate(&t)?)
            + &phi.evaluate(&t)?.gp(&g.a_dot_dt_with(&t, &a, ctx.method)?);
        Ok(Trial::new(rel_dev(&got, &want), &t, prod.anchors(), Some(&a)))
    });

    // A·∂_t φ(Ψ) = φ′(Ψ) A·∂_t Ψ
    for map in [ScalarMap::Square, ScalarMap::Exp, ScalarMap::Sin] {
        let tol = if map == ScalarMap::Square { Exact } else { Relaxed };
        b.pair(format!("eq-7.5e-{}", map.name()), Properties, tol, move |ctx, rng| {
            let psi = random_scalar_functional(ctx, rng);
            let t = extensor(ctx, rng);
            let a = vector(ctx, rng);
            let value = psi.evaluate(&t)?.scalar_part();
            let got = psi.mapped(map).a_dot_dt_with(&t, &a, ctx.method)?;
            let want = psi.a_dot_dt_with(&t, &a, ctx.method)?.scale(map.derivative(value));
            Ok(Trial::new(rel_dev(&got, &want), &t, psi.anchors(), Some(&a)))
        });
    }

    // Frame sums over an orthonormal and a random frame agree, p ∈ {1, 2}.
    b.pair("eq-7.4a-frames".into(), Properties, Relaxed, |ctx, rng| {
        let (phi, t) = star_case(ctx, rng);
        let other = random::frame(&ctx.metric, rng);
        let std = Frame::standard(&ctx.metric);
        let mut dev: f64 = 0.0;
        for kind in ProductKind::ALL {
            let want = phi.dt_star_via_frame_with(&t, kind, &std, ctx.method)?;
            let got = phi.dt_star_via_frame_with(&t, kind, &other, ctx.method)?;
            dev = dev.max(rel_dev(&got, &want));
        }
        Ok(Trial::new(dev, &t, phi.anchors(), None))
    });

    // The intrinsic form Σ_i A^i * ∂_{X^i}F equals the frame sum.
    b.pair("eq-7.4b-intrinsic".into(), Properties, Exact, |ctx, rng| {
        let (phi, t) = star_case(ctx, rng);
        let frame = random::frame(&ctx.metric, rng);
        let mut dev: f64 = 0.0;
        for kind in ProductKind::ALL {
            let got = phi.dt_star_with(&t, kind, ctx.method)?;
            let want = phi.dt_star_via_frame_with(&t, kind, &frame, ctx.method)?;
            dev = dev.max(rel_dev(&got, &want));
        }
        Ok(Trial::new(dev, &t, phi.anchors(), None))
    });
}

fn star_case(ctx: &Ctx, rng: &mut ChaCha8Rng) -> (InducedFunctional, Extensor) {
    if rng.random_bool(0.5) {
        (random_functional(ctx, rng), extensor(ctx, rng))
    } else {
        let phi = polynomial_functional(ctx, 2, rng);
        let t = random::extensor(&ctx.metric, 2, 1, rng).expect("2 ≤ n");
        (phi, t)
    }
}

fn bridge(b: &mut Builder) {
    use Suite::Bridge;
    use Tolerance::{Fd, Relaxed};

    // ∂Φ̂/∂t_pq against central differences of the lifted function.
    b.single("eq-7.7b-partials", Bridge, Fd, |ctx, rng| {
        let (phi, c) = bridge_functional(ctx, rng);
        let t = extensor(ctx, rng);
        let frame = random::frame(&ctx.metric, rng);
        let partials = classical_partials(&phi, &t, &frame)?;
        let comps = t.to_components(&frame)?;
        let h = ctx.fd_step;
        let mut dev: f64 = 0.0;
        for p in 0..ctx.n {
            for q in 0..ctx.n {
                let (mut up, mut down) = (comps.clone(), comps.clone());
                up[(p, q)] += h;
                down[(p, q)] -= h;
                let fd = (lifted_eval(&phi, &up, &frame)? - lifted_eval(&phi, &down, &frame)?) / (2.0 * h);
                dev = dev.max((fd - partials[(p, q)]).abs() / partials[(p, q)].abs().max(1.0));
            }
        }
        Ok(Trial::new(dev, &t, phi.anchors(), None).with("c", &c))
    });

    // Σ (a·e_p) e_q ∂Φ̂/∂t_pq = a·∂_t Φ
    b.pair("eq-7.7c".into(), Bridge, Relaxed, |ctx, rng| {
        let (phi, c) = bridge_functional(ctx, rng);
        let t = extensor(ctx, rng);
        let frame = random::frame(&ctx.metric, rng);
        let a = vector(ctx, rng);
        let partials = classical_partials_with(&phi, &t, &frame, ctx.method)?;
        let got = bridge_lhs_directional(&partials, &a, &frame)?;
        let want = phi.a_dot_dt(&t, &a)?;
        Ok(Trial::new(rel_dev(&got, &want), &t, phi.anchors(), Some(&a)).with("c", &c))
    });

    // Σ e_p * (e_q ∂Φ̂/∂t_pq) = ∂_t * Φ
    for kind in ProductKind::ALL {
        b.pair(format!("eq-7.7d-{kind}"), Bridge, Relaxed, move |ctx, rng| {
            let (phi, c) = bridge_functional(ctx, rng);
            let t = extensor(ctx, rng);
            let frame = random::frame(&ctx.metric, rng);
            let partials = classical_partials_with(&phi, &t, &frame, ctx.method)?;
            let got = bridge_lhs_star(&partials, kind, &frame)?;
            let want = phi.dt_star(&t, kind)?;
            Ok(Trial::new(rel_dev(&got, &want), &t, phi.anchors(), None).with("c", &c))
        });
    }
}
