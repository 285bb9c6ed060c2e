//! Writers for OBJ meshes, CSV samples and verification reports.
//!
//! Floats are written with Rust's shortest round-trip formatting (plain or
//! exponent form, whichever is shorter), which is locale independent, and lines end in `\n`, so identical inputs give
//! identical bytes. Minkowski coordinates are written as if Euclidean; a
//! mesh viewer shows `x3` as its z axis.

use std::io::Write;

use crate::error::Result;
use crate::lorentz::MinkVec3;
use crate::slope_surface::SurfaceMesh;

/// Shortest round-tripping text for `x`; `-0` prints as `0`.
fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let plain = x.to_string();
    let sci = format!("{x:e}");
    if sci.len() < plain.len() {
        sci
    } else {
        plain
    }
}

/// `v` lines for every vertex in row-major order, then one quad per grid
/// cell with 1-based indices.
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, sink: &mut W) -> Result<()> {
    let mut out = String::new();
    for p in &mesh.vertices {
        out.push_str(&format!("v {} {} {}\n", num(p.x1), num(p.x2), num(p.x3)));
    }
    let nv = mesh.nv;
    for r in 0..mesh.nu.saturating_sub(1) {
        for c in 0..nv.saturating_sub(1) {
            let i = r * nv + c + 1;
            let j = (r + 1) * nv + c + 1;
            out.push_str(&format!("f {} {} {} {}\n", i, j, j + 1, i + 1));
        }
    }
    sink.write_all(out.as_bytes())?;
    Ok(())
}

/// One CSV row: a parameter, a point and any extra columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub v: f64,
    pub point: MinkVec3,
    pub extra: Vec<f64>,
}

impl CsvRow {
    pub fn new(v: f64, point: MinkVec3) -> Self {
        Self {
            v,
            point,
            extra: Vec::new(),
        }
    }

    pub fn with_extra(v: f64, point: MinkVec3, extra: Vec<f64>) -> Self {
        Self { v, point, extra }
    }
}

/// Header `v,x1,x2,x3` followed by `extra_columns`, then one line per row.
pub fn write_csv<W: Write>(extra_columns: &[&str], rows: &[CsvRow], sink: &mut W) -> Result<()> {
    let mut out = String::from("v,x1,x2,x3");
    for name in extra_columns {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}",
            num(row.v),
            num(row.point.x1),
            num(row.point.x2),
            num(row.point.x3)
        ));
        for x in &row.extra {
            out.push_str(&format!(",{}", num(*x)));
        }
        out.push('\n');
    }
    sink.write_all(out.as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; it passes iff `residual <= tol` (NaN fails).
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64, notes: impl Into<String>) {
        self.entries.push(ReportEntry {
            name: name.into(),
            residual,
            tol,
            passed: residual <= tol,
            notes: notes.into(),
        });
    }

    /// Records a check that could not be evaluated.
    pub fn push_error(&mut self, name: impl Into<String>, tol: f64, error: &crate::Error) {
        self.entries.push(ReportEntry {
            name: name.into(),
            residual: f64::NAN,
            tol,
            passed: false,
            notes: error.to_string(),
        });
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

pub fn write_report<W: Write>(report: &VerificationReport, sink: &mut W) -> Result<()> {
    let mut out = String::new();
    for e in &report.entries {
        let tag = if e.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag} {} residual={:e} tol={:e}", e.name, e.residual, e.tol));
        if !e.notes.is_empty() {
            out.push(' ');
            out.push_str(&e.notes);
        }
        out.push('\n');
    }
    out.push_str(&format!("{}/{} checks passed\n", report.passed(), report.entries.len()));
    sink.write_all(out.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mesh(nu: usize, nv: usize) -> SurfaceMesh {
        SurfaceMesh {
            nu,
            nv,
            us: vec![0.0; nu],
            vs: vec![0.0; nv],
            vertices: (0..nu * nv).map(|i| MinkVec3::new(i as f64, 0.5, -1e-20)).collect(),
            normals: vec![MinkVec3::ZERO; nu * nv],
        }
    }

    fn render<F: FnOnce(&mut Vec<u8>) -> Result<()>>(f: F) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn obj_indexing() {
        let s = render(|b| write_obj(&mesh(2, 2), b));
        assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert_eq!(
            s.lines().filter(|l| l.starts_with("f ")).collect::<Vec<_>>(),
            ["f 1 3 4 2"]
        );
        assert!(s.starts_with("v 0 0.5 -1e-20\n"));
        let s = render(|b| write_obj(&mesh(2, 3), b));
        assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 6);
        assert_eq!(
            s.lines().filter(|l| l.starts_with("f ")).collect::<Vec<_>>(),
            ["f 1 4 5 2", "f 2 5 6 3"]
        );
        assert!(!s.contains('\r'));
    }

    #[test]
    fn csv_layout() {
        assert_eq!(render(|b| write_csv(&[], &[], b)), "v,x1,x2,x3\n");
        let rows = [CsvRow::new(0.0, MinkVec3::ZERO)];
        assert_eq!(render(|b| write_csv(&[], &rows, b)), "v,x1,x2,x3\n0,0,0,0\n");
        let rows = [CsvRow::with_extra(0.1, MinkVec3::new(1.0, 2.5, 1e21), vec![0.3, -2.0])];
        assert_eq!(
            render(|b| write_csv(&["kappa", "tau"], &rows, b)),
            "v,x1,x2,x3,kappa,tau\n0.1,1,2.5,1e21,0.3,-2\n"
        );
    }

    #[test]
    fn report_lines() {
        let r = VerificationReport::new();
        assert_eq!(render(|b| write_report(&r, b)), "0/0 checks passed\n");
        let mut r = VerificationReport::new();
        r.push("a", 1e-12, 1e-9, "");
        r.push("b", 2.0, 1.0, "too big");
        r.push("c", f64::NAN, 1.0, "");
        assert!(!r.all_passed());
        let s = render(|b| write_report(&r, b));
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], "PASS a residual=1e-12 tol=1e-9");
        assert_eq!(lines[1], "FAIL b residual=2e0 tol=1e0 too big");
        assert!(lines[2].starts_with("FAIL c residual=NaN"));
        assert_eq!(lines[3], "1/3 checks passed");
    }
}
