//! The simulation output table: CSV with header `n,t,Y,I,K`, one row per
//! period, floats serialized with 17 significant digits so values
//! round-trip losslessly.

use memkick_core::Trajectory;

pub const HEADER: &str = "n,t,Y,I,K";

/// 17 significant digits; parses back to the identical f64.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(80 * (traj.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for n in 0..traj.len() {
        let t = n as f64 * traj.step;
        out.push_str(&format!(
            "{n},{},{},{},{}\n",
            format_f64(t),
            format_f64(traj.output[n]),
            format_f64(traj.investment[n]),
            format_f64(traj.capital[n]),
        ));
    }
    out
}

#[derive(Debug, Clone)]
pub struct Table {
    pub t: Vec<f64>,
    pub y: Vec<f64>,
    pub i: Vec<f64>,
    pub k: Vec<f64>,
}

pub fn parse_csv(text: &str) -> Result<Table, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty CSV")?;
    if header.trim() != HEADER {
        return Err(format!("bad header {header:?}, expected {HEADER:?}"));
    }
    let mut table = Table {
        t: Vec::new(),
        y: Vec::new(),
        i: Vec::new(),
        k: Vec::new(),
    };
    for (idx, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(format!("row {}: expected 5 fields, got {}", idx + 2, fields.len()));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| format!("row {}: bad period index {:?}", idx + 2, fields[0]))?;
        if n != table.t.len() {
            return Err(format!("row {}: period index {n} out of order", idx + 2));
        }
        let mut vals = [0.0f64; 4];
        for (slot, field) in vals.iter_mut().zip(&fields[1..]) {
            *slot = field
                .parse()
                .map_err(|_| format!("row {}: bad number {field:?}", idx + 2))?;
        }
        table.t.push(vals[0]);
        table.y.push(vals[1]);
        table.i.push(vals[2]);
        table.k.push(vals[3]);
    }
    if table.t.is_empty() {
        return Err("CSV has no data rows".into());
    }
    Ok(table)
}
