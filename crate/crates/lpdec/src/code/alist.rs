//! Alist reader/writer (MacKay convention).
//!
//! Layout: `n m`, then `max_var_degree max_check_degree`, then the n variable
//! degrees, the m check degrees, one adjacency line per variable (1-based
//! check indices) and one per check (1-based variable indices). Zero padding
//! up to the declared maximum degree is permitted and ignored.

use super::ParityCheckMatrix;
use crate::error::{Error, Result};

impl ParityCheckMatrix {
    /// Parses alist text.
    pub fn from_alist(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let mut next_ints = |what: &str, count: Option<usize>| -> Result<Vec<usize>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Alist(format!("unexpected end of file, expected {what}")))?;
            let vals: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Alist(format!("bad integer {t:?} in {what}")))
                })
                .collect::<Result<_>>()?;
            if let Some(c) = count {
                if vals.len() != c {
                    return Err(Error::Alist(format!(
                        "{what}: expected {c} entries, found {}",
                        vals.len()
                    )));
                }
            }
            Ok(vals)
        };

        let header = next_ints("header", Some(2))?;
        let (n, m) = (header[0], header[1]);
        if n == 0 || m == 0 {
            return Err(Error::Alist("n and m must be positive".into()));
        }
        let max_degs = next_ints("maximum degrees", Some(2))?;
        let (max_var_deg, max_check_deg) = (max_degs[0], max_degs[1]);
        let var_degs = next_ints("variable degree list", Some(n))?;
        let check_degs = next_ints("check degree list", Some(m))?;
        if let Some(d) = var_degs.iter().find(|&&d| d == 0 || d > max_var_deg) {
            return Err(Error::Alist(format!(
                "variable degree {d} outside 1..={max_var_deg}"
            )));
        }
        if let Some(d) = check_degs.iter().find(|&&d| d == 0 || d > max_check_deg) {
            return Err(Error::Alist(format!(
                "check degree {d} outside 1..={max_check_deg}"
            )));
        }

        let mut read_adjacency = |count: usize, degs: &[usize], bound: usize, what: &str| -> Result<Vec<Vec<usize>>> {
            let mut lists = Vec::with_capacity(count);
            for (idx, &deg) in degs.iter().enumerate().take(count) {
                let raw = next_ints(&format!("{what} {} adjacency", idx + 1), None)?;
                let entries: Vec<usize> = raw.iter().copied().filter(|&v| v != 0).collect();
                if entries.len() != deg {
                    return Err(Error::Alist(format!(
                        "{what} {}: declared degree {deg} but line lists {} entries",
                        idx + 1,
                        entries.len()
                    )));
                }
                let mut zero_based = Vec::with_capacity(deg);
                for v in entries {
                    if v > bound {
                        return Err(Error::Alist(format!(
                            "{what} {}: index {v} out of range 1..={bound}",
                            idx + 1
                        )));
                    }
                    zero_based.push(v - 1);
                }
                lists.push(zero_based);
            }
            Ok(lists)
        };

        let var_lists = read_adjacency(n, &var_degs, m, "variable")?;
        let check_lists = read_adjacency(m, &check_degs, n, "check")?;

        let matrix = Self::from_checks(n, check_lists).map_err(|e| match e {
            Error::Code(msg) => Error::Alist(msg),
            other => other,
        })?;
        // The two adjacency sections must describe the same matrix.
        for (i, mut list) in var_lists.into_iter().enumerate() {
            list.sort_unstable();
            if matrix.variable_neighborhood(i) != list.as_slice() {
                return Err(Error::Alist(format!(
                    "variable {} adjacency disagrees with the check lists",
                    i + 1
                )));
            }
        }
        Ok(matrix)
    }

    /// Renders the matrix as unpadded alist text.
    pub fn to_alist(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.n, self.m));
        let max_var = (0..self.n).map(|i| self.variable_neighborhood(i).len()).max().unwrap();
        let max_check = (0..self.m).map(|j| self.check_neighborhood(j).len()).max().unwrap();
        out.push_str(&format!("{max_var} {max_check}\n"));
        let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(" ");
        out.push_str(&join(&mut (0..self.n).map(|i| self.variable_neighborhood(i).len().to_string())));
        out.push('\n');
        out.push_str(&join(&mut (0..self.m).map(|j| self.check_neighborhood(j).len().to_string())));
        out.push('\n');
        for i in 0..self.n {
            out.push_str(&join(&mut self.variable_neighborhood(i).iter().map(|j| (j + 1).to_string())));
            out.push('\n');
        }
        for j in 0..self.m {
            out.push_str(&join(&mut self.check_neighborhood(j).iter().map(|i| (i + 1).to_string())));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::hamming_7_4;

    // (7,4) Hamming code with checks {1,2,3,5}, {1,2,4,6}, {1,3,4,7} (1-based).
    const HAMMING_ALIST: &str = "\
7 3
3 4
3 2 2 2 1 1 1
4 4 4
1 2 3
1 2 0
1 3 0
2 3 0
1 0 0
2 0 0
3 0 0
1 2 3 5
1 2 4 6
1 3 4 7
";

    #[test]
    fn parses_hamming_alist() {
        let h = ParityCheckMatrix::from_alist(HAMMING_ALIST).unwrap();
        assert_eq!(h.num_variables(), 7);
        assert_eq!(h.num_checks(), 3);
        assert_eq!(h.variable_neighborhood(0), &[0, 1, 2]);
        assert_eq!(h.check_neighborhood(0), &[0, 1, 2, 4]);
        assert_eq!(h, hamming_7_4());
    }

    #[test]
    fn round_trips_through_text() {
        let h = hamming_7_4();
        let again = ParityCheckMatrix::from_alist(&h.to_alist()).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn rejects_out_of_range_index() {
        let bad = HAMMING_ALIST.replace("1 3 4 7", "1 3 4 8");
        assert!(ParityCheckMatrix::from_alist(&bad).is_err());
    }

    #[test]
    fn rejects_degree_mismatch() {
        let bad = HAMMING_ALIST.replace("1 2 3 5", "1 2 3 5 6");
        assert!(ParityCheckMatrix::from_alist(&bad).is_err());
    }

    #[test]
    fn rejects_inconsistent_sections() {
        // Variable 5's adjacency claims check 2 while check lists say check 1.
        let bad = HAMMING_ALIST.replace("\n1 0 0\n", "\n2 0 0\n");
        assert!(ParityCheckMatrix::from_alist(&bad).is_err());
    }

    #[test]
    fn rejects_truncated_file() {
        let mut text = String::from("7 3\n3 4\n");
        assert!(ParityCheckMatrix::from_alist(&text).is_err());
        text.push_str("3 2 2 2 1 1 1\n");
        assert!(ParityCheckMatrix::from_alist(&text).is_err());
    }
}
