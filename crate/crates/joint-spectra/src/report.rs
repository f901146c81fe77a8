//! Value-versus-prediction reports and their serialized forms.

use crate::error::{Error, Result};
use serde::Serialize;

/// Fixed CSV column order for [`SumReport`].
pub const CSV_HEADER: &str =
    "geometry,n,d,region_type,a,b,c,w0,p,lambda_max,value,main_term,abs_deviation,point_count";

/// One verification record: a spectral sum, its predicted main term, and the
/// deviation, together with the run configuration that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct SumReport {
    pub geometry: String,
    pub n: u32,
    pub d: u32,
    pub region_type: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub w0: Option<f64>,
    pub p: Option<f64>,
    pub lambda_max: f64,
    pub value: f64,
    pub main_term: f64,
    pub abs_deviation: f64,
    pub point_count: u64,
}

/// Round-trip-exact decimal form: 17 significant digits, locale independent.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

impl SumReport {
    pub fn new(
        geometry: &crate::geometry::GeometryPair,
        region_type: &str,
        lambda_max: f64,
        value: f64,
        main_term: f64,
        point_count: u64,
    ) -> Self {
        SumReport {
            geometry: geometry.name().to_string(),
            n: geometry.ambient_dim(),
            d: geometry.submanifold_dim(),
            region_type: region_type.to_string(),
            a: None,
            b: None,
            c: None,
            w0: None,
            p: None,
            lambda_max,
            value,
            main_term,
            abs_deviation: (value - main_term).abs(),
            point_count,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.geometry,
            self.n,
            self.d,
            self.region_type,
            fmt_opt(self.a),
            fmt_opt(self.b),
            fmt_opt(self.c),
            fmt_opt(self.w0),
            fmt_opt(self.p),
            fmt_f64(self.lambda_max),
            fmt_f64(self.value),
            fmt_f64(self.main_term),
            fmt_f64(self.abs_deviation),
            self.point_count
        )
    }

    pub fn from_csv_row(row: &str) -> Result<Self> {
        let fields: Vec<&str> = row.trim_end().split(',').collect();
        if fields.len() != 14 {
            return Err(Error::Parse(format!(
                "expected 14 CSV fields, found {}",
                fields.len()
            )));
        }
        let req = |s: &str, name: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad {name} field {s:?}")))
        };
        let opt = |s: &str, name: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                req(s, name).map(Some)
            }
        };
        Ok(SumReport {
            geometry: fields[0].to_string(),
            n: fields[1]
                .parse()
                .map_err(|_| Error::Parse("bad n".into()))?,
            d: fields[2]
                .parse()
                .map_err(|_| Error::Parse("bad d".into()))?,
            region_type: fields[3].to_string(),
            a: opt(fields[4], "a")?,
            b: opt(fields[5], "b")?,
            c: opt(fields[6], "c")?,
            w0: opt(fields[7], "w0")?,
            p: opt(fields[8], "p")?,
            lambda_max: req(fields[9], "lambda_max")?,
            value: req(fields[10], "value")?,
            main_term: req(fields[11], "main_term")?,
            abs_deviation: req(fields[12], "abs_deviation")?,
            point_count: fields[13]
                .parse()
                .map_err(|_| Error::Parse("bad point_count".into()))?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GeometryPair;

    #[test]
    fn csv_round_trip_is_exact() {
        let pair = GeometryPair::torus(3, 1).unwrap();
        let mut r = SumReport::new(&pair, "cone", 100.0, 1.0 / 3.0, std::f64::consts::FRAC_1_PI, 42);
        r.a = Some(0.3);
        r.b = Some(0.7f64.next_up());
        let row = r.csv_row();
        let back = SumReport::from_csv_row(&row).unwrap();
        assert_eq!(back.value.to_bits(), r.value.to_bits());
        assert_eq!(back.main_term.to_bits(), r.main_term.to_bits());
        assert_eq!(back.b.unwrap().to_bits(), r.b.unwrap().to_bits());
        assert_eq!(back.point_count, 42);
        assert_eq!(back.c, None);
    }

    #[test]
    fn json_has_snake_case_keys() {
        let pair = GeometryPair::sphere_meridian();
        let r = SumReport::new(&pair, "weyl", 5.0, 1.0, 2.0, 3);
        let j = r.to_json();
        assert!(j.contains("\"lambda_max\""));
        assert!(j.contains("\"abs_deviation\""));
        assert!(j.contains("\"a\":null"));
    }
}
