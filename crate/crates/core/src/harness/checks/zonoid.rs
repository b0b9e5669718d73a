//! Zonotopes and the projection body `Pi K`.

use rayon::prelude::*;

use super::super::{Comparison, Context, Evaluation, Side};
use crate::error::{GeomError, Result};
use crate::linalg::{binomial, dot, factorial};
use crate::quermass::{b_constant, omega};
use crate::sampling::{mc_estimate, minimize_on_grassmannian, sample_sphere, MinimizeOptions};
use crate::zonotope::{Zonotope, MAX_CONVERSION_GENERATORS, MAX_EXACT_TERMS};

const ZON_VOL_OVERSAMPLING: usize = 50;
const POLAR_FLOP_BUDGET: f64 = 4e8;
const POLAR_CHUNK: usize = 100_000;

fn zonotope<'a>(ctx: &'a Context) -> Result<&'a Zonotope> {
    ctx.body.zonotope.as_ref().ok_or_else(|| GeomError::Inadmissible("not a zonotope".into()))
}

fn batch_min(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}

pub(super) fn lzon1(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let z = zonotope(ctx)?;
    let (xi, found) = z.min_projection(&MinimizeOptions::for_dim(n), ctx.seed_for("L-ZON-1"))?;
    let min = found.min(batch_min(ctx.base.shadow_volumes(n - 1)?));
    let rhs = nf * b_constant(n) / (nf - 1.0) * ctx.base.volume().powf((nf - 1.0) / nf);
    let mut ev = Evaluation::default();
    ev.push(Comparison::upper("min", Side::exact(min), Side::exact(rhs), ctx.cfg.tol));
    ev.note("xi_min", xi);
    Ok(ev)
}

pub(super) fn tzon2(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let z = zonotope(ctx)?;
    let v = ctx.base.volume();
    let opts = MinimizeOptions { restarts: n, step_tol: 1e-8, max_iters: 300 };
    let mut ev = Evaluation::default();
    for k in 2..n {
        let f = |s: &crate::sampling::SubspaceBasis| z.projection_volume(s).unwrap_or(f64::INFINITY);
        let (_, found) = minimize_on_grassmannian(f, n, k, &opts, ctx.seed_for(&format!("T-ZON-2/{k}")))?;
        let min = found.min(batch_min(ctx.base.shadow_volumes(k)?));
        let kf = k as f64;
        let rhs = nf * b_constant(n).powi((n - k) as i32) / kf * v.powf(kf / nf);
        ev.push(Comparison::upper(format!("k={k}"), Side::exact(min), Side::exact(rhs), ctx.cfg.tol));
    }
    Ok(ev)
}

pub(super) fn zonvol(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let partial = ctx.partial()?;
    let v = ctx.base.volume();
    let pb = ctx.projection_body();
    let w = omega(n);
    let w1 = omega(n - 1);
    let tol = ctx.cfg.tol;

    let seed = ctx.seed_for("ZON-VOL");
    // single terms are a few flops, so sample far more than elsewhere
    let det_samples = ZON_VOL_OVERSAMPLING * ctx.cfg.samples;
    let vol_pb = Side::from(pb.volume_estimate(det_samples, seed.derive("det-sum"))?).scale(v.powf(1.0 - nf));
    let merged = pb.merged();
    let gens = merged.generators();
    let (polar, polar_method) = if gens.len() <= MAX_CONVERSION_GENERATORS {
        (Side::exact(merged.to_polytope()?.polar()?.volume()), "exact")
    } else {
        // |Pi* K| = omega_n mean h_{Pi K}^{-n}; the support function costs m n
        // flops, so the sample size follows a fixed flop budget
        let count = (POLAR_FLOP_BUDGET / (gens.len() * n) as f64) as usize;
        let count = count.clamp(ctx.cfg.samples, ZON_VOL_OVERSAMPLING * ctx.cfg.samples);
        let mut vals = Vec::with_capacity(count);
        for (i, start) in (0..count).step_by(POLAR_CHUNK).enumerate() {
            let dirs = sample_sphere(n, POLAR_CHUNK.min(count - start), seed.derive(&format!("polar/{i}")))?;
            let h = |xi: &crate::sampling::Direction| gens.iter().map(|g| dot(g, xi.coords()).abs()).sum::<f64>();
            vals.par_extend(dirs.par_iter().map(|xi| h(xi).powf(-nf)));
        }
        (Side::from(mc_estimate(&vals)?).scale(w), "sphere-mean")
    };
    let polar = polar.scale(v.powf(nf - 1.0));

    let mut ev = Evaluation::default();
    ev.push(Comparison::lower("PiK>=", vol_pb, Side::exact((partial / nf).powf(nf)), tol));
    ev.push(Comparison::upper("PiK<=", vol_pb, Side::exact(w * (w1 * partial / (nf * w)).powf(nf)), tol));
    ev.push(Comparison::lower("PiStarK>=", polar, Side::exact(w * (nf * w / (w1 * partial)).powf(nf)), tol));
    let top = 4f64.powf(nf) * nf.powf(nf) / (factorial(n) * partial.powf(nf));
    ev.push(Comparison::upper("PiStarK<=", polar, Side::exact(top), tol));
    ev.note("partial", partial);
    ev.note("polar_method", polar_method);
    Ok(ev)
}

pub(super) fn minproj(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let v = ctx.base.volume();
    let partial = ctx.partial()?;
    let (xi, min) = ctx.min_projection()?;
    let mut ev = Evaluation::default();
    let bound = omega(n - 1) * partial / (nf * omega(n)) * v.powf((nf - 1.0) / nf);
    ev.push(Comparison::upper("min<=vrad-bound", Side::exact(*min), Side::exact(bound), ctx.cfg.tol));
    let merged = ctx.projection_body().merged();
    let m = merged.generators().len();
    if m <= MAX_CONVERSION_GENERATORS {
        let (r, _) = merged.to_polytope()?.inradius()?;
        ev.push(Comparison::identity("min=r(PiK)", Side::exact(*min), Side::exact(r), 1e-6));
        ev.note("inradius_pi_k", r);
    } else {
        ev.note("inradius_pi_k", format!("skipped: {m} generators after merging"));
    }
    ev.note("c", min / (nf.sqrt() * v.powf((nf - 1.0) / nf)));
    ev.note("xi_min", xi);
    Ok(ev)
}

pub(super) fn zonvol_id(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let z = ctx.projection_body().merged();
    let m = z.generators().len();
    if binomial(m, n) > MAX_EXACT_TERMS || binomial(m, n - 1) > MAX_EXACT_TERMS {
        return Ok(Evaluation::skipped(format!("{m} generators exceed the exact subset cap")));
    }
    let lhs = z.volume()?;
    let cofactors = z.shadow_generators()?;
    let sum: f64 = ctx
        .body
        .poly
        .facets()
        .iter()
        .map(|f| f.measure * cofactors.iter().map(|c| dot(c, f.normal.coords()).abs()).sum::<f64>())
        .sum();
    let mut ev = Evaluation::default();
    ev.push(Comparison::identity("volume", Side::exact(lhs), Side::exact(sum / n as f64), 1e-8));
    ev.note("generators", m);
    Ok(ev)
}
