//! `compile` and `render`.

use crate::{check_failed, read, write, Outcome, Target};
use anyhow::anyhow;
use ngon_core::construction::arith::compile_to_arith;
use ngon_core::construction::geom::{execute_geom, expand_macros, lower_to_geom, GeomOp};
use ngon_core::construction::svg::{emit_svg, SvgOptions, FULL_LIMIT};
use ngon_core::format::{arith_to_json, geom_to_json, tower_from_json};
use ngon_core::numeric::{pow2, to_f64};
use ngon_core::tower::Tower;
use std::path::Path;

fn load(path: &Path) -> anyhow::Result<Tower> {
    Ok(tower_from_json(&read(path)?)?)
}

pub fn compile(tower: &Path, target: Target, out: &Path, expand: bool) -> Outcome {
    let tw = load(tower)?;
    let prog = compile_to_arith(&tw)?;
    match target {
        Target::Arith => {
            write(out, &arith_to_json(&prog))?;
            println!("{} operations, {} square roots", prog.ops.len(), prog.sqrt_count());
        }
        Target::Geom => {
            let mut g = lower_to_geom(&prog, tw.precision, false)?;
            if expand {
                g = expand_macros(&g);
            }
            write(out, &geom_to_json(&g))?;
            let circles = g.count(|op| matches!(op, GeomOp::Circle { .. }));
            let lines = g.count(|op| matches!(op, GeomOp::Line { .. }));
            println!("{} operations: {circles} circles, {lines} lines", g.ops.len());
        }
    }
    Ok(())
}

pub fn render(tower: &Path, out: &Path, max_vertices: usize, size: u32, zoom: f64) -> Outcome {
    if size == 0 || !zoom.is_finite() || zoom <= 0.0 || max_vertices == 0 {
        return Err(anyhow!("size, zoom and max-vertices must be positive").into());
    }
    let tw = load(tower)?;
    let n = tw.params.n;
    let prog = compile_to_arith(&tw)?;
    let g = lower_to_geom(&prog, tw.precision, true)?;
    let cap = if n <= FULL_LIMIT { None } else { Some(max_vertices) };
    let res = execute_geom(&g, tw.precision, cap).map_err(check_failed)?;
    if let Some(err) = &res.closure_error {
        let tol = pow2(-((tw.precision / 2) as i64), tw.precision);
        if err.abs().cmp(&tol) != Some(-1) {
            return Err(check_failed(anyhow!("polygon does not close: error {:e}", to_f64(err))));
        }
    }
    let poly = g.outputs.polygon.expect("lowered with polygon");
    let vertices: Vec<(f64, f64)> = res.polygon(poly).iter().map(|p| (to_f64(&p.x), to_f64(&p.y))).collect();
    let opts = SvgOptions {
        max_vertices,
        size,
        zoom,
    };
    write(out, &emit_svg(n, &vertices, &opts))?;
    println!("{} of {n} vertices drawn", vertices.len().min(if n <= FULL_LIMIT { n as usize } else { max_vertices }));
    Ok(())
}
