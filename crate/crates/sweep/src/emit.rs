//! CSV and plot-data writers.

use std::io::{self, Write};

use thiserror::Error;

use crate::config::Quantity;
use crate::run::Row;

pub const CSV_HEADER: &str = "coupling,mubar,lnZ,Fbar,Ubar,Sbar,Cbar,engine,variant";

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("no rows to emit")]
    Empty,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Scientific notation with `digits` significant digits, `-0` folded to `0`.
pub fn format_real(x: f64, digits: usize) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.*e}", digits.saturating_sub(1), x)
}

pub fn emit_csv<W: Write>(rows: &[Row], mut out: W, precision: usize) -> Result<(), EmitError> {
    if rows.is_empty() {
        return Err(EmitError::Empty);
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        let p = &r.point;
        let fields = [r.coupling, p.mubar, p.ln_z, p.fbar, p.ubar, p.sbar, p.cbar]
            .map(|x| format_real(x, precision));
        writeln!(out, "{},{},{}", fields.join(","), r.engine, r.variant)?;
    }
    out.flush()?;
    Ok(())
}

pub fn quantity_value(row: &Row, q: Quantity) -> f64 {
    let p = &row.point;
    match q {
        Quantity::LnZ => p.ln_z,
        Quantity::F => p.fbar,
        Quantity::U => p.ubar,
        Quantity::S => p.sbar,
        Quantity::C => p.cbar,
    }
}

/// One `mubar value` block per coupling, separated by a blank line, each
/// headed by a `#` comment naming the coupling and quantity.
pub fn emit_plotdat<W: Write>(
    rows: &[Row],
    quantity: Quantity,
    mut out: W,
    precision: usize,
) -> Result<(), EmitError> {
    if rows.is_empty() {
        return Err(EmitError::Empty);
    }
    let mut current: Option<f64> = None;
    for r in rows {
        if current.map(|c| c.to_bits()) != Some(r.coupling.to_bits()) {
            if current.is_some() {
                writeln!(out)?;
            }
            writeln!(
                out,
                "# coupling {} quantity {quantity}",
                format_real(r.coupling, precision)
            )?;
            current = Some(r.coupling);
        }
        writeln!(
            out,
            "{} {}",
            format_real(r.point.mubar, precision),
            format_real(quantity_value(r, quantity), precision)
        )?;
    }
    out.flush()?;
    Ok(())
}
