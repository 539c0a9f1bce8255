//! Serialization of results: CSV for array-like data (traces, grids,
//! coefficient tables, scans) and JSON for classification records. Floats are
//! printed with Rust's shortest round-trip formatting, so re-parsing
//! reproduces the exact bits.

use num_complex::Complex;
use p3fox::asymptotics::Regime;
use p3fox::expansion::LatticeSeries;
use p3fox::ode::{Chart, GridResult, PointStatus, Trajectory};
use serde::Serialize;

type C64 = Complex<f64>;

#[derive(Serialize)]
pub struct JetOut {
    pub u: [f64; 2],
    pub du: [f64; 2],
}

impl JetOut {
    pub fn new(u: C64, du: C64) -> Self {
        Self { u: [u.re, u.im], du: [du.re, du.im] }
    }
}

#[derive(Serialize)]
pub struct RegimeOut {
    pub subject: String,
    pub case: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_c: Option<u32>,
    pub exponent: [f64; 2],
    pub coefficient: [f64; 2],
}

impl RegimeOut {
    pub fn new(r: &Regime<f64>) -> Self {
        Self {
            subject: match r.subject {
                p3fox::asymptotics::Subject::Delta => "delta".into(),
                p3fox::asymptotics::Subject::U => "u".into(),
            },
            case: r.case_label,
            j: r.j,
            r_c: r.r_c,
            exponent: [r.exponent.re, r.exponent.im],
            coefficient: [r.coefficient.re, r.coefficient.im],
        }
    }

    pub fn csv_rows(&self, out: &mut String) {
        let opt = |v: Option<u32>| v.map_or(String::new(), |x| x.to_string());
        out.push_str(&format!("{}_case,{},\n", self.subject, self.case));
        out.push_str(&format!("{}_j,{},\n", self.subject, opt(self.j)));
        out.push_str(&format!("{}_rc,{},\n", self.subject, opt(self.r_c)));
        out.push_str(&format!("{}_exponent,{},{}\n", self.subject, self.exponent[0], self.exponent[1]));
        out.push_str(&format!(
            "{}_coefficient,{},{}\n",
            self.subject, self.coefficient[0], self.coefficient[1]
        ));
    }
}

pub fn chart_label(c: Chart) -> &'static str {
    match c {
        Chart::U => "U",
        Chart::V => "V",
    }
}

pub fn status_label(s: PointStatus) -> &'static str {
    match s {
        PointStatus::Ok => "ok",
        PointStatus::Pole => "pole",
        PointStatus::Failed => "failed",
    }
}

pub fn trace_csv(traj: &Trajectory<f64>) -> String {
    let mut out = String::from("x_re,x_im,u_re,u_im,chart\n");
    for s in &traj.samples {
        let (u, _) = s.u_view();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.x.re,
            s.x.im,
            u.re,
            u.im,
            chart_label(s.chart)
        ));
    }
    out
}

pub fn grid_csv(g: &GridResult<f64>) -> String {
    let mut out = String::from("x_re,x_im,u_re,u_im,status\n");
    let dx = (g.spec.x_max - g.spec.x_min) / (g.spec.nx - 1).max(1) as f64;
    let dy = if g.spec.ny > 1 {
        (g.spec.y_max - g.spec.y_min) / (g.spec.ny - 1) as f64
    } else {
        0.0
    };
    for row in 0..g.spec.ny {
        for col in 0..g.spec.nx {
            let idx = row * g.spec.nx + col;
            let x = g.spec.x_min + dx * col as f64;
            let y = g.spec.y_min + dy * row as f64;
            let v = g.values[idx];
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                x,
                y,
                v.re,
                v.im,
                status_label(g.status[idx])
            ));
        }
    }
    out
}

pub fn expand_csv(series: &LatticeSeries<f64>) -> String {
    let mut out = String::from("m,l,exp_re,exp_im,coef_re,coef_im\n");
    for (key, coef) in series.sorted_terms() {
        let e = series.exponent_of(key);
        out.push_str(&format!("{},{},{},{},{},{}\n", key.0, key.1, e.re, e.im, coef.re, coef.im));
    }
    out
}

#[derive(Serialize)]
pub struct ExpandTermOut {
    pub m: i64,
    pub l: i64,
    pub exponent: [f64; 2],
    pub coefficient: [f64; 2],
}

pub fn expand_json(series: &LatticeSeries<f64>) -> Vec<ExpandTermOut> {
    series
        .sorted_terms()
        .into_iter()
        .map(|(key, coef)| {
            let e = series.exponent_of(key);
            ExpandTermOut {
                m: key.0,
                l: key.1,
                exponent: [e.re, e.im],
                coefficient: [coef.re, coef.im],
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_floats_round_trip() {
        let vals = [std::f64::consts::PI, -1.0 / 3.0, 1e-300, 2.0f64.powi(-40)];
        for v in vals {
            let s = format!("{v}");
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, v);
        }
    }
}
