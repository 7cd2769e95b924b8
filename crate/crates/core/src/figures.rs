//! Data series for the two reference plots: coherent vs Fock distances, and
//! vacuum vs thermal / pseudothermal distances.

use std::io::Write;

use crate::closed_forms::{coherent_fock, phase_pair, thermal_pair};
use crate::error::Result;
use crate::fock_core::C64;
use crate::format::g12;

/// Abscissa values 0, 0.1, …, 10.
pub fn abscissa() -> Vec<f64> {
    (0..=100).map(|k| k as f64 / 10.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    /// |α|²
    pub mean_number: f64,
    pub m: u32,
    pub hs: f64,
    pub dn: f64,
}

pub const FIGURE1_HEADER: &str = "mean_number,m,d_HS,d_N";

/// Distances between |α⟩ and |m⟩, m = 1, 2, 3, for |α|² on [0, 10].
pub fn figure1_rows() -> Vec<Figure1Row> {
    let mut rows = Vec::new();
    for x in abscissa() {
        for m in 1..=3 {
            let r = coherent_fock(C64::new(x.sqrt(), 0.0), m);
            rows.push(Figure1Row {
                mean_number: x,
                m,
                hs: r.get("hs").expect("hs entry"),
                dn: r.get("dN").expect("dN entry"),
            });
        }
    }
    rows
}

pub fn write_figure1_csv<W: Write>(mut out: W) -> std::io::Result<()> {
    writeln!(out, "{FIGURE1_HEADER}")?;
    for r in figure1_rows() {
        writeln!(out, "{},{},{},{}", g12(r.mean_number), r.m, g12(r.hs), g12(r.dn))?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure2Row {
    pub nbar: f64,
    pub dn_thermal: f64,
    pub hs_thermal: f64,
    pub bu_thermal: f64,
    pub hs_pseudo: f64,
    pub dn_pseudo: f64,
    pub dn_sqrt_thermal: f64,
}

pub const FIGURE2_HEADER: &str = "nbar,d_N_thermal,d_HS_thermal,d_BU_thermal,d_HS_pseudo,d_N_pseudo,d_N_sqrt_thermal";

/// Distances from the vacuum to the thermal state and to the coherent phase
/// state |ε⟩ with the same mean number, |ε|² = n̄/(1 + n̄).
pub fn figure2_row(nbar: f64) -> Result<Figure2Row> {
    let t = thermal_pair(nbar, 0.0)?;
    let eps = C64::new((nbar / (1.0 + nbar)).sqrt(), 0.0);
    let p = phase_pair(eps, C64::new(0.0, 0.0))?;
    Ok(Figure2Row {
        nbar,
        dn_thermal: t.get("dN").expect("dN entry"),
        hs_thermal: t.get("hs").expect("hs entry"),
        bu_thermal: t.get("bu").expect("bu entry"),
        hs_pseudo: p.get("hs").expect("hs entry"),
        dn_pseudo: p.get("dN").expect("dN entry"),
        dn_sqrt_thermal: t.get("dN_sqrt").expect("dN_sqrt entry"),
    })
}

pub fn figure2_rows() -> Result<Vec<Figure2Row>> {
    abscissa().into_iter().map(figure2_row).collect()
}

pub fn write_figure2_csv<W: Write>(mut out: W) -> Result<()> {
    writeln!(out, "{FIGURE2_HEADER}")?;
    for r in figure2_rows()? {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            g12(r.nbar),
            g12(r.dn_thermal),
            g12(r.hs_thermal),
            g12(r.bu_thermal),
            g12(r.hs_pseudo),
            g12(r.dn_pseudo),
            g12(r.dn_sqrt_thermal)
        )?;
    }
    Ok(())
}
