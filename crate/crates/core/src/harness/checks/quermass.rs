//! Quermassintegrals of a body and of its shadows.

use rayon::prelude::*;

use super::super::{Comparison, Context, Evaluation, Side};
use crate::error::Result;
use crate::linalg::binomial;
use crate::quermass::{b_constant, omega};
use crate::sampling::{mc_estimate, sample_grassmannian, RngSeed, SubspaceBasis};

/// `V_{k-p}(P_F K)` for a k-dimensional `F`, by Kubota averaging over
/// `(k-p)`-subspaces of `F` lifted to R^n. No hull of the shadow is built.
fn kubota_in(ctx: &Context, f: &SubspaceBasis, p: usize, samples: usize, seed: RngSeed) -> Result<Side> {
    let k = f.dim_sub();
    let inner = sample_grassmannian(k, k - p, samples, seed)?;
    let vals: Vec<f64> = inner.par_iter().map(|e| ctx.body.poly.shadow_volume(&f.lift(e))).collect::<Result<_>>()?;
    Ok(Side::from(mc_estimate(&vals)?).scale(omega(k) / omega(k - p)))
}

pub(super) fn alek(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let k = &ctx.base;
    let tol = ctx.cfg.tol;
    let q: Vec<Side> = (1..n)
        .map(|j| Ok(k.mean_shadow_volume(j)?.scale(1.0 / omega(j)).powf(1.0 / j as f64)))
        .collect::<Result<_>>()?;
    let mut ev = Evaluation::default();
    for j in 1..n - 1 {
        ev.push(Comparison::lower(format!("Q{j}>=Q{}", j + 1), q[j - 1], q[j], tol));
    }
    let vrad = (k.volume() / omega(n)).powf(1.0 / n as f64);
    ev.push(Comparison::lower(format!("Q{}>=vrad", n - 1), q[n - 2], Side::exact(vrad), tol));
    let batch = k.sphere()?;
    let h: Vec<f64> = batch.dirs.par_iter().map(|xi| ctx.body.poly.support(xi.coords())).collect();
    let w = Side::from(mc_estimate(&h)?);
    ev.push(Comparison::lower("w>=Q1", w, q[0], tol));
    ev.note("q", q.iter().map(|s| s.value).collect::<Vec<_>>());
    ev.note("vrad", vrad);
    ev.note("w", w.value);
    Ok(ev)
}

pub(super) fn quer1(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = &ctx.base;
    let partial = ctx.partial()?;
    let root = k.volume().powf(1.0 / nf);
    let mut ev = Evaluation::default();
    for p in 1..n - 1 {
        // p = 1 is the minimal shadow surface; otherwise evaluate at the
        // direction of the minimal shadow volume
        let (xi, inner) = if p == 1 {
            let (xi, s) = k.min_shadow_surface()?;
            (xi.clone(), Side::exact(s / (nf - 1.0)))
        } else {
            let (xi, _) = ctx.min_projection()?;
            let seed = ctx.seed_for(&format!("T-QUER-1/{p}"));
            let v = kubota_in(ctx, &SubspaceBasis::hyperplane(xi), p, ctx.cfg.inner_samples, seed)?;
            (xi.clone(), v)
        };
        let lhs = inner.scale(root);
        let v = k.quermass(n - p)?;
        let pf = p as f64;
        let c = (pf + 1.0) * omega(n - 1) * partial / (nf * omega(n));
        ev.push(Comparison::upper(format!("p={p}"), lhs, v.scale(c), ctx.cfg.tol));
        if ctx.body.is_zonoid() {
            ev.push(Comparison::upper(format!("p={p} zonoid"), lhs, v.scale((pf + 1.0) * b_constant(n)), ctx.cfg.tol));
        }
        ev.note(&format!("xi/p={p}"), xi);
    }
    ev.note("partial", partial);
    ev.note("inner_samples", ctx.cfg.inner_samples);
    Ok(ev)
}

pub(super) fn quer2(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = &ctx.base;
    let v = k.volume();
    let mut ev = Evaluation::default();
    for p in 1..n - 1 {
        let lhs = k.mean_shadow_quermass(n - 1 - p)?.scale(v.powf(1.0 / nf));
        let c = (p as f64 + 1.0) * omega(n - 1) / (nf * omega(n)) * k.surface() / v.powf((nf - 1.0) / nf);
        ev.push(Comparison::upper(format!("p={p}"), lhs, k.quermass(n - p)?.scale(c), ctx.cfg.tol));
    }
    Ok(ev)
}

fn quer3_rhs(v: Side, n: usize, p: usize) -> Side {
    let e = (n - 1 - p) as f64 / (n - p) as f64;
    v.powf(e).scale(omega(n - 1) / omega(n).powf(e))
}

pub(super) fn quer3(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let k = &ctx.base;
    let mut ev = Evaluation::default();
    for p in 1..n - 1 {
        let lhs = k.mean_shadow_quermass(n - 1 - p)?;
        ev.push(Comparison::lower(format!("p={p}"), lhs, quer3_rhs(k.quermass(n - p)?, n, p), ctx.cfg.tol));
    }
    Ok(ev)
}

pub(super) fn quer4(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let mut ev = Evaluation::default();
    for kind in ctx.classical_placements() {
        let k = ctx.sampled(kind)?;
        let root = k.volume().powf(1.0 / nf);
        let (r, _) = k.poly.inradius()?;
        let c0 = r / root;
        ev.note(&format!("c0/{kind}"), c0);
        for p in 1..n - 1 {
            let lhs = k.mean_shadow_quermass(n - 1 - p)?.scale(root);
            let e = (n - 1 - p) as f64 / (n - p) as f64;
            let c = omega(n - 1) * c0.powf(p as f64 / (n - p) as f64) / omega(n).powf(e);
            let rhs = k.quermass(n - p)?.scale(c);
            ev.push(Comparison::lower(format!("{kind} p={p}"), lhs, rhs, ctx.cfg.tol));
        }
    }
    Ok(ev)
}

pub(super) fn fgm(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let k = &ctx.base;
    let v = k.volume();
    let count = ctx.cfg.frames;
    let mut ev = Evaluation::default();
    for dim in 1..n {
        let frames = k.frames(dim, count)?;
        let vols = &k.shadow_volumes(dim)?[..frames.len()];
        for p in 1..=dim {
            let lhs = k.quermass(n - p)?.scale(1.0 / v);
            let c = 1.0 / binomial(n - dim + p, n - dim);
            let shadow: Vec<Side> = if p == dim {
                vec![Side::exact(omega(dim)); frames.len()]
            } else if p == 1 {
                let s = &k.shadow_surfaces(dim)?[..frames.len()];
                s.iter().map(|s| Side::exact(s / dim as f64)).collect()
            } else {
                let seed = ctx.seed_for(&format!("FGM/{dim}/{p}"));
                frames.iter().map(|f| kubota_in(ctx, f, p, ctx.cfg.fgm_inner_samples, seed)).collect::<Result<_>>()?
            };
            for (i, (s, pv)) in shadow.into_iter().zip(vols).enumerate() {
                let rhs = s.scale(c / pv);
                ev.push(Comparison::lower(format!("k={dim} p={p} F#{i}"), lhs, rhs, ctx.cfg.tol));
            }
        }
    }
    ev.note("inner_samples", ctx.cfg.fgm_inner_samples);
    Ok(ev)
}
