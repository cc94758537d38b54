//! Count tables for quadrangulations with boundaries: one row per boundary
//! length tuple, columns `Q = 0…q_max` counting internal quadrangles.
//!
//! The curve's `u`-order is chosen from `q_max` and raised until every emitted
//! coefficient is exact, unless an explicit order is supplied.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bijection::{fully_simple_disks, ordinary_disks, CylinderTransforms};
use crate::curve::DiskCurve;
use crate::exact::{rat_to_string, ExactError, USeries};
use crate::toprec::{
    ordinary_cylinder_series, ordinary_disk_series, pole_cap, series_row, Role, TableRow, TrEngine, TrError,
};

#[derive(Debug, Clone, Error)]
pub enum TableError {
    #[error("invalid selection: {0}")]
    Config(String),
    #[error(transparent)]
    Tr(#[from] TrError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Disks,
    Cylinders,
    Tori,
    Pants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Ordinary,
    Simple,
    FullySimple,
    Mixed,
}

impl Family {
    pub fn boundaries(self) -> usize {
        match self {
            Family::Disks | Family::Tori => 1,
            Family::Cylinders => 2,
            Family::Pants => 3,
        }
    }
    pub fn genus(self) -> usize {
        if self == Family::Tori {
            1
        } else {
            0
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            Family::Disks => "disks",
            Family::Cylinders => "cylinders",
            Family::Tori => "tori",
            Family::Pants => "pants",
        }
    }
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Ordinary => "ordinary",
            Mode::Simple => "simple",
            Mode::FullySimple => "fully-simple",
            Mode::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = TableError;
    fn from_str(s: &str) -> Result<Self, TableError> {
        match s {
            "disks" => Ok(Family::Disks),
            "cylinders" => Ok(Family::Cylinders),
            "tori" => Ok(Family::Tori),
            "pants" => Ok(Family::Pants),
            _ => Err(TableError::Config(format!("unknown family '{s}'"))),
        }
    }
}

impl FromStr for Mode {
    type Err = TableError;
    fn from_str(s: &str) -> Result<Self, TableError> {
        match s {
            "ordinary" => Ok(Mode::Ordinary),
            "simple" => Ok(Mode::Simple),
            "fully-simple" => Ok(Mode::FullySimple),
            "mixed" => Ok(Mode::Mixed),
            _ => Err(TableError::Config(format!("unknown mode '{s}'"))),
        }
    }
}

/// Whether a family/mode pair is supported. Simple and fully simple coincide
/// for a single boundary; mixed boundaries need two boundaries.
pub fn supported(family: Family, mode: Mode) -> bool {
    match family {
        Family::Disks => mode != Mode::Mixed,
        Family::Cylinders => true,
        Family::Tori | Family::Pants => matches!(mode, Mode::Ordinary | Mode::FullySimple),
    }
}

/// Default rows, matching the published figures.
pub fn default_lengths(family: Family, mode: Mode) -> Vec<Vec<u32>> {
    match family {
        Family::Disks => [2, 4, 6, 8].iter().map(|&l| vec![l]).collect(),
        Family::Tori => (1..=7).map(|m| vec![2 * m]).collect(),
        Family::Cylinders => {
            let ordinary: &[[u32; 2]] = &[
                [1, 1],
                [3, 1],
                [5, 1],
                [7, 1],
                [9, 1],
                [2, 2],
                [4, 2],
                [6, 2],
                [8, 2],
                [3, 3],
                [5, 3],
                [7, 3],
                [9, 3],
                [4, 4],
                [6, 4],
                [8, 4],
            ];
            let mixed: &[[u32; 2]] = &[
                [1, 1],
                [3, 1],
                [5, 1],
                [7, 1],
                [9, 1],
                [2, 2],
                [4, 2],
                [6, 2],
                [8, 2],
                [1, 3],
                [3, 3],
                [5, 3],
                [7, 3],
                [9, 3],
                [2, 4],
                [4, 4],
                [6, 4],
                [8, 4],
            ];
            match mode {
                Mode::Ordinary => ordinary.iter().map(|r| r.to_vec()).collect(),
                Mode::Mixed => mixed.iter().map(|r| r.to_vec()).collect(),
                _ => ordinary.iter().map(|r| vec![r[1], r[0]]).collect(),
            }
        }
        Family::Pants => {
            let mut rows = vec![];
            for a in 1..=4u32 {
                for b in a..=4 {
                    for c in b..=4 {
                        if (a + b + c) % 2 == 0 {
                            rows.push(vec![a, b, c]);
                        }
                    }
                }
            }
            rows
        }
    }
}

/// Parses a length selector: rows separated by `;`; within a row, lengths
/// separated by `,`. For one-boundary families a plain comma list gives one
/// row per entry.
pub fn parse_lengths(family: Family, s: &str) -> Result<Vec<Vec<u32>>, TableError> {
    let parse_row = |r: &str| -> Result<Vec<u32>, TableError> {
        r.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|e| TableError::Config(format!("bad length '{x}': {e}")))
            })
            .collect()
    };
    let mut rows = vec![];
    for r in s.split(';').filter(|r| !r.trim().is_empty()) {
        let row = parse_row(r)?;
        if family.boundaries() == 1 {
            rows.extend(row.into_iter().map(|l| vec![l]));
        } else {
            rows.push(row);
        }
    }
    for r in &rows {
        if r.len() != family.boundaries() {
            return Err(TableError::Config(format!(
                "{family} rows need {} lengths, got {r:?}",
                family.boundaries()
            )));
        }
        if r.contains(&0) {
            return Err(TableError::Config("lengths must be positive".into()));
        }
    }
    if rows.is_empty() {
        return Err(TableError::Config("no lengths given".into()));
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableSpec {
    pub family: Family,
    pub mode: Mode,
    pub lengths: Vec<Vec<u32>>,
    pub q_max: usize,
    /// Explicit `u`-order of the curve; derived from `q_max` when absent.
    pub u_order: Option<i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Table {
    pub family: Family,
    pub mode: Mode,
    pub genus: usize,
    pub qmax: usize,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lengths");
        for q in 0..=self.qmax {
            out.push_str(&format!(",Q{q}"));
        }
        out.push('\n');
        for r in &self.rows {
            let ls: Vec<String> = r.lengths.iter().map(|l| l.to_string()).collect();
            out.push_str(&format!("\"{}\"", ls.join(",")));
            for c in &r.coeffs {
                out.push_str(&format!(",\"{}\"", rat_to_string(c)));
            }
            out.push('\n');
        }
        out
    }
}

/// Smallest `u`-order that could give exact `t`-coefficients up to `q_max`.
pub fn base_u_order(q_max: usize) -> i64 {
    2 * q_max as i64 + 2
}

fn compute_series(spec: &TableSpec, order: i64) -> Result<Vec<USeries>, TableError> {
    let curve = DiskCurve::quadrangulations(order)?;
    let kmax = spec.lengths.iter().flatten().copied().max().unwrap_or(1) as usize;
    let rows = &spec.lengths;
    let out = match (spec.family, spec.mode) {
        (Family::Disks, Mode::Ordinary) => rows
            .par_iter()
            .map(|r| ordinary_disk_series(&curve, r[0]))
            .collect::<Result<Vec<_>, _>>()?,
        (Family::Disks, Mode::Simple | Mode::FullySimple) => {
            let f = ordinary_disks(&curve, kmax)?;
            let h = fully_simple_disks(&f, kmax)?;
            rows.iter().map(|r| h[r[0] as usize].clone()).collect()
        }
        (Family::Cylinders, Mode::Ordinary) => rows
            .par_iter()
            .map(|r| ordinary_cylinder_series(&curve, r[0], r[1]))
            .collect::<Result<Vec<_>, _>>()?,
        (Family::Cylinders, mode) => {
            let ct = CylinderTransforms::new(&curve, kmax)?;
            match mode {
                Mode::Mixed => rows
                    .par_iter()
                    .map(|r| ct.mixed(r[0] as usize, r[1] as usize))
                    .collect(),
                Mode::Simple => rows
                    .par_iter()
                    .map(|r| ct.simple(r[0] as usize, r[1] as usize))
                    .collect(),
                _ => {
                    let h = ct.fully_simple();
                    rows.iter().map(|r| h[r[0] as usize][r[1] as usize].clone()).collect()
                }
            }
        }
        (family, mode) => {
            let role = if mode == Mode::Ordinary {
                Role::Ordinary
            } else {
                Role::Exchanged
            };
            let g = family.genus();
            let eng = TrEngine::new(curve, role, pole_cap(g, family.boundaries()))?;
            // build the amplitude cache before fanning out
            eng.amplitude(g, family.boundaries())?;
            rows.par_iter()
                .map(|r| eng.extract_series(g, r))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(out)
}

/// Generates a table. Rows appear in the order given.
pub fn generate(spec: &TableSpec) -> Result<Table, TableError> {
    if !supported(spec.family, spec.mode) {
        return Err(TableError::Config(format!(
            "mode {} is not available for {}",
            spec.mode, spec.family
        )));
    }
    for r in &spec.lengths {
        if r.len() != spec.family.boundaries() || r.contains(&0) {
            return Err(TableError::Config(format!("invalid lengths {r:?} for {}", spec.family)));
        }
    }
    let base = base_u_order(spec.q_max);
    if let Some(o) = spec.u_order {
        if o < base {
            return Err(TableError::Config(format!("u-order {o} is below 2·qmax + 2 = {base}")));
        }
    }
    let mut order = spec.u_order.unwrap_or(base);
    loop {
        let series = compute_series(spec, order)?;
        let rows: Result<Vec<TableRow>, TrError> = spec
            .lengths
            .iter()
            .zip(&series)
            .map(|(l, s)| series_row(l, s, spec.q_max))
            .collect();
        match rows {
            Ok(rows) => {
                return Ok(Table {
                    family: spec.family,
                    mode: spec.mode,
                    genus: spec.family.genus(),
                    qmax: spec.q_max,
                    rows,
                })
            }
            Err(TrError::Precision { need, have }) if spec.u_order.is_none() => {
                order += (need - have).max(2);
            }
            Err(e) => return Err(e.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toprec::as_int;

    fn ints(t: &Table, i: usize) -> Vec<i64> {
        t.rows[i]
            .coeffs
            .iter()
            .map(|c| i64::try_from(as_int(c)).unwrap())
            .collect()
    }

    #[test]
    fn small_tables() {
        let spec = TableSpec {
            family: Family::Disks,
            mode: Mode::Ordinary,
            lengths: vec![vec![3]],
            q_max: 4,
            u_order: None,
        };
        assert_eq!(ints(&generate(&spec).unwrap(), 0), vec![0; 5]);
        let spec = TableSpec {
            family: Family::Tori,
            mode: Mode::FullySimple,
            lengths: vec![vec![2]],
            q_max: 4,
            u_order: None,
        };
        assert_eq!(ints(&generate(&spec).unwrap(), 0), vec![0, 0, 6, 117, 1755]);
    }

    #[test]
    fn invalid_combinations() {
        assert!(!supported(Family::Tori, Mode::Mixed));
        let spec = TableSpec {
            family: Family::Tori,
            mode: Mode::Mixed,
            lengths: vec![vec![2]],
            q_max: 2,
            u_order: None,
        };
        assert!(matches!(generate(&spec), Err(TableError::Config(_))));
        let spec = TableSpec {
            family: Family::Disks,
            mode: Mode::Ordinary,
            lengths: vec![vec![2]],
            q_max: 4,
            u_order: Some(4),
        };
        assert!(matches!(generate(&spec), Err(TableError::Config(_))));
        assert!(parse_lengths(Family::Cylinders, "2,2,2").is_err());
        assert_eq!(parse_lengths(Family::Disks, "2,4").unwrap(), vec![vec![2], vec![4]]);
        assert_eq!(
            parse_lengths(Family::Cylinders, "2,2;4,2").unwrap(),
            vec![vec![2, 2], vec![4, 2]]
        );
    }
}
