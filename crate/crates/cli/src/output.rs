//! Serialization helpers: JSON with floats at 17 significant digits and
//! the sweep CSV table.

use std::io::{self, Write};

use serde::Serialize;
use spinwave_gate::{GateReport, SingleExcitationState, TwoExcitationState};

/// serde_json formatter that prints every f64 in scientific notation with
/// 17 significant digits, so outputs are reproducible and diffable.
struct SciFloats;

impl serde_json::ser::Formatter for SciFloats {
    fn write_f64<W: Write + ?Sized>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize any value to a JSON string with the 17-digit float policy.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFloats);
    value.serialize(&mut ser).expect("report types serialize");
    String::from_utf8(buf).expect("serde_json emits utf-8")
}

/// Header of the sweep table: the gate-report columns plus an error
/// column for points that failed.
pub fn sweep_csv_header() -> String {
    format!("{},error", GateReport::CSV_COLUMNS)
}

/// One successful sweep row.
pub fn sweep_csv_row(report: &GateReport) -> String {
    format!("{},", report.csv_row())
}

/// One failed sweep row: the point's identity, empty metrics, and the
/// error message in the last column.
pub fn sweep_csv_error_row(n: usize, j: f64, v: f64, sigma: f64, message: &str) -> String {
    let f = |x: f64| format!("{x:.16e}");
    let clean = message.replace([',', '\n', '"'], ";");
    format!("{},{},{},{},,,,,,,,,{clean}", n, f(j), f(v), f(sigma))
}

/// Single-excitation snapshot table: one row per site.
pub fn single_state_csv(state: &SingleExcitationState) -> String {
    let mut s = String::from("site,re,im\n");
    for (i, a) in state.amps().iter().enumerate() {
        s.push_str(&format!("{},{:.16e},{:.16e}\n", i + 1, a.re, a.im));
    }
    s
}

/// Two-excitation snapshot table: one row per ordered site pair.
pub fn pair_state_csv(state: &TwoExcitationState) -> String {
    let mut s = String::from("j,j_prime,re,im\n");
    let basis = state.basis();
    for ((j, jp), a) in basis.iter().zip(state.amps()) {
        s.push_str(&format!("{j},{jp},{:.16e},{:.16e}\n", a.re, a.im));
    }
    s
}
