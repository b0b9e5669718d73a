//! Surface area of projections onto k-dimensional subspaces.

use super::super::{Comparison, Context, Evaluation, Sampled, Side};
use crate::error::Result;
use crate::quermass::{b_constant, omega};

fn higher6_coef(n: usize, k: usize) -> f64 {
    let e = (k as f64 - 1.0) / (n as f64 - 1.0);
    k as f64 * omega(k) / (n as f64 * omega(n)).powf(e)
}

pub(super) fn lhigher1(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let k = &ctx.base;
    let lhs = Side::exact(k.surface() / k.volume());
    let mut ev = Evaluation::default();
    for dim in 2..n {
        let c = n as f64 / (dim * (n - dim + 1)) as f64;
        let vols = k.shadow_volumes(dim)?;
        let surfs = k.shadow_surfaces(dim)?;
        for (i, (s, v)) in surfs.iter().zip(vols).take(ctx.cfg.frames).enumerate() {
            ev.push(Comparison::lower(format!("k={dim} F#{i}"), lhs, Side::exact(c * s / v), ctx.cfg.tol));
        }
    }
    Ok(ev)
}

pub(super) fn higher2(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = &ctx.base;
    let mut ev = Evaluation::default();
    for dim in 2..n {
        let min = k.shadow_surfaces(dim)?.iter().copied().fold(f64::INFINITY, f64::min);
        let lhs = k.volume().powf((n - dim) as f64 / nf) * min;
        let rhs = (n - dim + 1) as f64 * b_constant(n).powi((n - dim) as i32) * k.surface();
        ev.push(Comparison::upper(format!("k={dim}"), Side::exact(lhs), Side::exact(rhs), ctx.cfg.tol));
    }
    Ok(ev)
}

pub(super) fn higher5(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let nf = n as f64;
    let k = &ctx.base;
    let v = k.volume();
    let mut ev = Evaluation::default();
    for dim in 2..n {
        let lhs = k.mean_shadow_surface(dim)?.scale(v.powf((n - dim) as f64 / nf));
        let p_k = k.mean_shadow_volume(dim)?.scale(v.powf(-(dim as f64) / nf));
        let c = (dim * (n - dim + 1)) as f64 / nf * k.surface();
        ev.push(Comparison::upper(format!("k={dim}"), lhs, p_k.scale(c), ctx.cfg.tol));
        ev.note(&format!("p_{dim}"), p_k.value);
    }
    Ok(ev)
}

pub(super) fn higher6(ctx: &Context) -> Result<Evaluation> {
    let n = ctx.n();
    let k = &ctx.base;
    let mut ev = Evaluation::default();
    for dim in 2..n {
        let e = (dim as f64 - 1.0) / (n as f64 - 1.0);
        let rhs = Side::exact(higher6_coef(n, dim) * k.surface().powf(e));
        ev.push(Comparison::lower(format!("k={dim}"), k.mean_shadow_surface(dim)?, rhs, ctx.cfg.tol));
    }
    Ok(ev)
}

fn higher7_at(k: &Sampled, n: usize, label: &str, tol: f64, ev: &mut Evaluation) -> Result<()> {
    let nf = n as f64;
    let (v, s) = (k.volume(), k.surface());
    let c0 = s / (nf * v.powf((nf - 1.0) / nf));
    ev.note(&format!("c0/{label}"), c0);
    for dim in 2..n {
        let lhs = k.mean_shadow_surface(dim)?.scale(v.powf((n - dim) as f64 / nf));
        let c = higher6_coef(n, dim) / (c0 * nf).powf((n - dim) as f64 / (nf - 1.0));
        ev.push(Comparison::lower(format!("{label} k={dim}"), lhs, Side::exact(c * s), tol));
    }
    Ok(())
}

pub(super) fn higher7(ctx: &Context) -> Result<Evaluation> {
    let mut ev = Evaluation::default();
    for kind in ctx.classical_placements() {
        higher7_at(ctx.sampled(kind)?, ctx.n(), kind, ctx.cfg.tol, &mut ev)?;
    }
    Ok(ev)
}
