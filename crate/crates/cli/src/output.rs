use serde_json::Value;

pub enum CliError {
    Usage(String),
    Compute(stablerep::Error),
}

impl From<stablerep::Error> for CliError {
    fn from(e: stablerep::Error) -> Self {
        CliError::Compute(e)
    }
}

/// A result with a JSON form and a flat CSV form.
pub struct Table {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Table { json, header, rows }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.json).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }
}

/// Compact JSON text of a serializable value, for CSV cells.
pub fn cell<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}
