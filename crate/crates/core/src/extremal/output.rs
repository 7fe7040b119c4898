//! Result files: one CSV row per record, with the witness tournament
//! (`.trn`) and power path (`.json`) written next to the CSV.

use std::fs;
use std::io;
use std::path::Path;

use super::SearchRecord;
use crate::trn::write_trn;

pub const CSV_HEADER: &str = "n,k,fingerprint,pp,bound_flag,method,seed,witness_file";

/// File stem shared by a record's `.trn` and `.json`.
pub fn witness_stem(r: &SearchRecord) -> String {
    format!(
        "n{}_k{}_{}_s{}_c{}_i{}",
        r.n,
        r.k,
        r.method.as_str(),
        r.seed,
        r.chain,
        r.iteration
    )
}

pub fn csv_row(r: &SearchRecord, witness_file: &str) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.n,
        r.k,
        r.fingerprint,
        r.pp,
        r.bound.as_str(),
        r.method.as_str(),
        r.seed,
        witness_file
    )
}

/// Write the witness files into `dir` and return the CSV row.
pub fn write_record(dir: &Path, r: &SearchRecord) -> io::Result<String> {
    let stem = witness_stem(r);
    fs::write(dir.join(format!("{stem}.trn")), write_trn(&r.tournament))?;
    fs::write(dir.join(format!("{stem}.json")), r.witness.to_json() + "\n")?;
    Ok(csv_row(r, &format!("{stem}.trn")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::enumerate_min_pp;
    use crate::solver::PowerPath;
    use crate::trn::read_trn;

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let rec = enumerate_min_pp(3, 2).unwrap().record();
        let row = write_record(dir.path(), &rec).unwrap();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("3,2,c:"));
        assert!(row.ends_with(",2,exact,enumeration,0,n3_k2_enumeration_s0_c0_i0.trn"));
        let stem = witness_stem(&rec);
        let t = read_trn(&fs::read(dir.path().join(format!("{stem}.trn"))).unwrap()).unwrap();
        let p = PowerPath::from_json(&fs::read_to_string(dir.path().join(format!("{stem}.json"))).unwrap()).unwrap();
        assert_eq!(t, rec.tournament);
        assert!(p.is_valid(&t) && p.len() == rec.pp);
    }
}
