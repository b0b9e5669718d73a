use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{GeomError, Result};

/// Largest ball inside `{x : <u_i, x> <= b_i}` with unit `u_i`.
pub(crate) fn chebyshev_center(normals: &[Vec<f64>], offsets: &[f64], n: usize) -> Result<(f64, Vec<f64>)> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let center: Vec<_> = (0..n).map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let r = lp.add_var(1.0, (0.0, f64::INFINITY));
    for (u, &b) in normals.iter().zip(offsets) {
        let mut terms: Vec<_> = center.iter().zip(u).map(|(&v, &c)| (v, c)).collect();
        terms.push((r, 1.0));
        lp.add_constraint(terms.as_slice(), ComparisonOp::Le, b);
    }
    let sol = lp.solve().map_err(|e| GeomError::LinearProgram(e.to_string()))?;
    Ok((*sol.var_value(r), center.iter().map(|&v| *sol.var_value(v)).collect()))
}
