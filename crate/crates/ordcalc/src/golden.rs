//! Hall polynomial tables as tab-separated records
//! `gamma  k  weight  lambda_1 ... lambda_w`, one per basis index `k >= 2`.

use std::path::Path;

use ordcalc_core::hall::{hall_polynomials, FreeNilpotent};

use crate::error::AppError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRecord {
    pub gamma: usize,
    pub k: usize,
    pub weight: usize,
    pub lambda: Vec<i128>,
}

impl LambdaRecord {
    pub fn to_line(&self) -> String {
        let mut fields = vec![self.gamma.to_string(), self.k.to_string(), self.weight.to_string()];
        fields.extend(self.lambda.iter().map(|l| l.to_string()));
        fields.join("\t")
    }
}

pub fn records(group: &FreeNilpotent) -> Result<Vec<LambdaRecord>, AppError> {
    Ok(hall_polynomials(group)?
        .into_iter()
        .map(|p| LambdaRecord { gamma: group.gamma(), k: p.index, weight: p.weight, lambda: p.poly.coefficients().to_vec() })
        .collect())
}

pub fn parse(text: &str) -> Result<Vec<LambdaRecord>, AppError> {
    let mut rdr = csv::ReaderBuilder::new().delimiter(b'\t').has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let bad = |why: &str| AppError::Malformed(format!("golden line {}: {why}", line + 1));
        let rec = rec.map_err(|e| bad(&e.to_string()))?;
        if rec.len() < 3 {
            return Err(bad("expected gamma, k, weight and coefficients"));
        }
        let int = |i: usize| rec[i].trim().parse::<i128>().map_err(|_| bad(&format!("`{}` is not an integer", &rec[i])));
        let (gamma, k, weight) = (int(0)? as usize, int(1)? as usize, int(2)? as usize);
        let lambda = (3..rec.len()).map(int).collect::<Result<Vec<_>, _>>()?;
        if lambda.len() != weight {
            return Err(bad(&format!("weight {weight} but {} coefficients", lambda.len())));
        }
        out.push(LambdaRecord { gamma, k, weight, lambda });
    }
    Ok(out)
}

/// Compares the computed records for one class against that class's rows of the file.
pub fn compare(path: &Path, computed: &[LambdaRecord]) -> Result<(), AppError> {
    let gamma = computed.first().map(|r| r.gamma);
    let stored: Vec<LambdaRecord> = parse(&std::fs::read_to_string(path)?)?.into_iter().filter(|r| Some(r.gamma) == gamma).collect();
    if stored.len() != computed.len() {
        return Err(AppError::Golden(format!("{} records stored for this class, {} computed", stored.len(), computed.len())));
    }
    for (s, c) in stored.iter().zip(computed) {
        if s != c {
            return Err(AppError::Golden(format!("stored `{}`, computed `{}`", s.to_line(), c.to_line())));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_round_trip() {
        let f = FreeNilpotent::new(4).unwrap();
        let recs = records(&f).unwrap();
        let text: String = recs.iter().map(|r| r.to_line() + "\n").collect();
        assert_eq!(parse(&text).unwrap(), recs);
        assert!(parse("2\t2\t2\t0").is_err());
        assert!(parse("2\tx\t1\t0").is_err());
    }
}
