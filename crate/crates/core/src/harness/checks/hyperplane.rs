//! Hyperplane shadows: surface area of `P_{xi^perp} K` against `S(K)`.

use super::super::{Comparison, Context, Evaluation, Sampled, Side};
use crate::error::Result;
use crate::quermass::{b_constant, omega};

fn isoperimetric(s: &Sampled) -> f64 {
    let n = s.dim() as f64;
    s.surface() / s.volume().powf((n - 1.0) / n)
}

pub(super) fn ghp(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n() as f64;
    let k = &ctx.base;
    let batch = k.sphere()?;
    let rhs = Side::exact(2.0 * (n - 1.0) / n * k.surface() / k.volume());
    let mut ev = Evaluation::default();
    for (i, (v, s)) in batch.volume.iter().zip(&batch.surface).take(ctx.cfg.ghp_directions).enumerate() {
        ev.push(Comparison::upper(format!("xi#{i}"), Side::exact(s / v), rhs, ctx.cfg.tol));
    }
    Ok(ev)
}

pub(super) fn hyper1(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let k = &ctx.base;
    let partial = ctx.partial()?;
    let (xi, min) = k.min_shadow_surface()?;
    let lhs = Side::exact(k.volume().powf(1.0 / n as f64) * min);
    let c = 2.0 * b_constant(n) * partial / (n as f64 * omega(n).powf(1.0 / n as f64));
    let mut ev = Evaluation::default();
    ev.push(Comparison::upper("min", lhs, Side::exact(c * k.surface()), ctx.cfg.tol));
    ev.note("partial", partial);
    ev.note("factor", c);
    ev.note("xi_min", xi);
    Ok(ev)
}

pub(super) fn lower_min(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = ctx.sampled("min-surface")?;
    let partial = isoperimetric(k);
    let (xi, min) = k.min_shadow_surface()?;
    let lhs = Side::exact(k.volume().powf(1.0 / nf) * min);
    let c = (nf - 1.0) * omega(n).powf(1.0 / (nf - 1.0))
        / (4.0 * nf.powf((nf - 2.0) / (nf - 1.0)) * partial.powf(1.0 / (nf - 1.0)));
    let mut ev = Evaluation::default();
    ev.push(Comparison::lower("min-surface", lhs, Side::exact(c * k.surface()), ctx.cfg.tol));
    ev.note("partial", partial);
    ev.note("xi_min", xi);
    Ok(ev)
}

pub(super) fn hyper2(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let k = &ctx.base;
    let (xi, min) = k.min_shadow_surface()?;
    let lhs = Side::exact(k.volume().powf(1.0 / n as f64) * min);
    let mut ev = Evaluation::default();
    ev.push(Comparison::upper("min", lhs, Side::exact(2.0 * b_constant(n) * k.surface()), ctx.cfg.tol));
    ev.note("xi_min", xi);
    Ok(ev)
}

fn hyper3_coef(n: usize) -> f64 {
    let nf = n as f64;
    2.0 * (nf - 1.0) * omega(n - 1) / (nf * nf * omega(n))
}

pub(super) fn hyper3(ctx: &Context) -> Result<Evaluation> {
    let k = &ctx.base;
    let lhs = k.mean_shadow_surface(ctx.n() - 1)?.scale(k.volume());
    let rhs = Side::exact(hyper3_coef(ctx.n()) * k.surface().powi(2));
    let mut ev = Evaluation::default();
    ev.push(Comparison::upper("mean", lhs, rhs, ctx.cfg.tol));
    Ok(ev)
}

pub(super) fn hyper4(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let mut ev = Evaluation::default();
    for kind in ctx.classical_placements() {
        let k = ctx.sampled(kind)?;
        let s = k.surface();
        let lhs = k.mean_shadow_surface(n - 1)?.scale(k.volume().powf(1.0 / nf));
        let rhs = Side::exact(hyper3_coef(n) * isoperimetric(k) * s);
        ev.note(&format!("c2/{kind}"), lhs.value / (nf.sqrt() * s));
        ev.push(Comparison::upper(kind, lhs, rhs, ctx.cfg.tol));
    }
    Ok(ev)
}

fn hyper5_coef(n: usize) -> f64 {
    let nf = n as f64;
    (nf - 1.0) * omega(n - 1) / (nf * omega(n)).powf((nf - 2.0) / (nf - 1.0))
}

pub(super) fn hyper5(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = &ctx.base;
    let lhs = k.mean_shadow_surface(n - 1)?;
    let rhs = Side::exact(hyper5_coef(n) * k.surface().powf((nf - 2.0) / (nf - 1.0)));
    let mut ev = Evaluation::default();
    ev.push(Comparison::lower("mean", lhs, rhs, ctx.cfg.tol));
    Ok(ev)
}

pub(super) fn hyper6(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let mut ev = Evaluation::default();
    for kind in ["min-mean-width", "isotropic", "john", "lowner"] {
        let placed = ctx.placed(kind)?;
        let k = placed.certified()?;
        let (v, s) = (k.volume(), k.surface());
        let root = v.powf(1.0 / nf);
        let lhs = k.mean_shadow_surface(n - 1)?.scale(root);
        let rhs = Side::exact(hyper5_coef(n) * s.powf((nf - 2.0) / (nf - 1.0)) * root);
        ev.note(&format!("c5/{kind}"), lhs.value / s);
        ev.note(&format!("condition/{kind}"), s.powf(1.0 / (nf - 1.0)) / root);
        if kind == "min-mean-width" {
            ev.note("min-mean-width/residual", placed.result.residual);
        }
        ev.push(Comparison::lower(kind, lhs, rhs, ctx.cfg.tol));
    }
    Ok(ev)
}

pub(super) fn s_inradius(ctx: &Context) -> Result<Evaluation> {
    let p = &ctx.body.poly;
    let (r, center) = p.inradius()?;
    let rhs = Side::exact(ctx.n() as f64 * p.volume() / r);
    let mut ev = Evaluation::default();
    ev.push(Comparison::upper("inradius", Side::exact(p.surface_area()), rhs, ctx.cfg.tol));
    ev.note("inradius", r);
    ev.note("center", center);
    Ok(ev)
}

pub(super) fn ck_ident(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = &ctx.base;
    let mut ev = Evaluation::default();
    let cauchy = k.mean_shadow_volume(n - 1)?.scale(nf * omega(n) / omega(n - 1));
    ev.push(Comparison::identity("cauchy", Side::exact(k.surface()), cauchy, 1e-9));
    let lhs = k.mean_shadow_surface(n - 1)?;
    let rhs = k.mean_shadow_volume(n - 2)?.scale((nf - 1.0) * omega(n - 1) / omega(n - 2));
    ev.push(Comparison::identity("shadow-surface", lhs, rhs, 1e-9));
    Ok(ev)
}

pub(super) fn ball_eq(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = &ctx.base;
    let p = &ctx.body.poly;
    let (xi, min) = k.min_shadow_surface()?;
    let lhs = Side::exact(k.volume().powf(1.0 / nf) * min);
    let rhs = Side::exact(b_constant(n) * k.surface());
    // r B subset K subset R B about the origin pins the ratio between
    // (r/R)^(n-1) and (R/r)^(n-1)
    let r = p.facets().iter().map(|f| f.offset).fold(f64::INFINITY, f64::min);
    let big_r = p.circumradius();
    let slack = (r / big_r).powf(nf - 1.0);
    let mut ev = Evaluation::default();
    ev.push(Comparison::lower("above-slack", lhs, rhs.scale(slack), ctx.cfg.tol));
    ev.push(Comparison::upper("below-inverse-slack", lhs, rhs.scale(1.0 / slack), ctx.cfg.tol));
    ev.headline = Some((lhs, rhs));
    ev.note("slack", slack);
    ev.note("hyper2_ratio", lhs.value / (2.0 * rhs.value));
    ev.note("xi_min", xi);
    Ok(ev)
}
