//! CSV writers. Floats are written with 17 significant digits in
//! scientific notation, independent of locale.

use std::io::{self, Write};

use crate::homog::RateReport;
use crate::nodal::NodalRow;
use crate::shooting::TracePoint;
use crate::spectrum::CurvePoint;

pub const CURVE_HEADER: &str = "k,sign,t,lambda,alpha,beta";
pub const TRAJECTORY_HEADER: &str = "x,u,du";
pub const NODAL_HEADER: &str = "k,sign,t,epsilon,domain_index,left,right,sign_of_u,length";
pub const RATE_HEADER: &str = "k,sign,t,epsilon,lambda_eps,lambda_0,abs_err,slope,C_emp";

/// 17 significant digits, e.g. `4.0000000000000000e0`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_curve<W: Write>(mut w: W, points: &[CurvePoint]) -> io::Result<()> {
    writeln!(w, "{CURVE_HEADER}")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            p.k,
            p.sign,
            fmt_f64(p.t),
            fmt_f64(p.lambda),
            fmt_f64(p.alpha),
            fmt_f64(p.beta)
        )?;
    }
    Ok(())
}

pub fn write_trajectory<W: Write>(mut w: W, points: &[TracePoint]) -> io::Result<()> {
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for p in points {
        writeln!(w, "{},{},{}", fmt_f64(p.x), fmt_f64(p.u), fmt_f64(p.du))?;
    }
    Ok(())
}

pub fn write_nodal<W: Write>(mut w: W, rows: &[NodalRow]) -> io::Result<()> {
    writeln!(w, "{NODAL_HEADER}")?;
    for r in rows {
        let eps = r.epsilon.map_or_else(|| "limit".to_string(), fmt_f64);
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.k,
            r.sign,
            fmt_f64(r.t),
            eps,
            r.domain_index,
            fmt_f64(r.left),
            fmt_f64(r.right),
            r.sign_of_u,
            fmt_f64(r.length)
        )?;
    }
    Ok(())
}

/// One row per solved point; slope and `C_emp` repeat along a series, with
/// an empty slope when the series has no fit.
pub fn write_rates<W: Write>(mut w: W, report: &RateReport) -> io::Result<()> {
    writeln!(w, "{RATE_HEADER}")?;
    for s in &report.series {
        let slope = s.fit.map_or_else(String::new, |f| fmt_f64(f.slope));
        for r in &s.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                s.key.k,
                s.key.sign,
                fmt_f64(s.key.t),
                fmt_f64(r.epsilon),
                fmt_f64(r.lambda_eps),
                fmt_f64(r.lambda_0),
                fmt_f64(r.abs_err),
                slope,
                fmt_f64(s.c_emp)
            )?;
        }
    }
    Ok(())
}
