//! Dense `n x n` distance and precedence matrices indexed by vertex id, and
//! their text file format.
//!
//! File layout, one matrix per file:
//!
//! ```text
//! # apsp distance matrix
//! # n 3
//! # ids 1 2 3
//! 0 1 3
//! 1 0 2
//! 3 2 0
//! ```
//!
//! Rows and columns follow the `ids` line. `INF` marks an infinite distance
//! or an unset predecessor.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::weight::{VertexId, Weight};

const UNSET: u32 = 0;

/// Shortest-path lengths, `cells[i][j]` for ids `i, j`. Starts with zero on
/// the diagonal and `INFINITY` elsewhere.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    cells: Vec<u64>,
}

impl DistanceMatrix {
    pub fn new(n: usize) -> Self {
        let mut cells = vec![u64::MAX; n * n];
        for i in 0..n {
            cells[i * n + i] = 0;
        }
        DistanceMatrix { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: VertexId, j: VertexId) -> Weight {
        Weight::from_raw(self.cells[i.index() * self.n + j.index()])
    }

    #[inline]
    pub fn set(&mut self, i: VertexId, j: VertexId, w: Weight) {
        self.cells[i.index() * self.n + j.index()] = w.raw();
    }

    /// Row `i` in raw encoding (`u64::MAX` is infinity).
    #[inline]
    pub(crate) fn row_raw(&self, i: VertexId) -> &[u64] {
        &self.cells[i.index() * self.n..(i.index() + 1) * self.n]
    }

    #[inline]
    pub(crate) fn cells_mut(&mut self) -> &mut [u64] {
        &mut self.cells
    }

    /// First cell (row-major) where the two matrices differ.
    pub fn first_mismatch(&self, other: &DistanceMatrix) -> Option<(VertexId, VertexId, Weight, Weight)> {
        if self.n != other.n {
            let k = VertexId::from_index(self.n.min(other.n));
            return Some((k, k, Weight::INFINITY, Weight::INFINITY));
        }
        self.cells
            .iter()
            .zip(&other.cells)
            .position(|(a, b)| a != b)
            .map(|pos| {
                let (i, j) = (VertexId::from_index(pos / self.n), VertexId::from_index(pos % self.n));
                (i, j, self.get(i, j), other.get(i, j))
            })
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<Weight>> = (0..self.n)
            .map(|i| self.row_raw(VertexId::from_index(i)).iter().map(|&c| Weight::from_raw(c)).collect())
            .collect();
        f.debug_struct("DistanceMatrix").field("n", &self.n).field("rows", &rows).finish()
    }
}

/// `cells[i][j]` is the vertex preceding `j` on the chosen shortest `i -> j`
/// path. Unset means the path's last hop is an original edge leaving `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrecedenceMatrix {
    n: usize,
    cells: Vec<u32>,
}

impl PrecedenceMatrix {
    pub fn new(n: usize) -> Self {
        PrecedenceMatrix {
            n,
            cells: vec![UNSET; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: VertexId, j: VertexId) -> Option<VertexId> {
        match self.cells[i.index() * self.n + j.index()] {
            UNSET => None,
            id => Some(VertexId::new(id)),
        }
    }

    #[inline]
    pub fn set(&mut self, i: VertexId, j: VertexId, p: Option<VertexId>) {
        self.cells[i.index() * self.n + j.index()] = p.map_or(UNSET, VertexId::get);
    }
}

impl PrecedenceMatrix {
    #[inline]
    pub(crate) fn cells_mut(&mut self) -> &mut [u32] {
        &mut self.cells
    }
}

impl std::fmt::Debug for PrecedenceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[u32]> = self.cells.chunks(self.n.max(1)).collect();
        f.debug_struct("PrecedenceMatrix").field("n", &self.n).field("rows", &rows).finish()
    }
}

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn write_distance_matrix<W: Write>(m: &DistanceMatrix, out: W) -> io::Result<()> {
    write_cells(out, "distance", m.n, |i, j| m.cells[i * m.n + j].finite_or_inf())
}

pub fn write_precedence_matrix<W: Write>(p: &PrecedenceMatrix, out: W) -> io::Result<()> {
    write_cells(out, "precedence", p.n, |i, j| match p.cells[i * p.n + j] {
        UNSET => None,
        id => Some(id as u64),
    })
}

trait FiniteOrInf {
    fn finite_or_inf(self) -> Option<u64>;
}

impl FiniteOrInf for u64 {
    fn finite_or_inf(self) -> Option<u64> {
        (self != u64::MAX).then_some(self)
    }
}

fn write_cells<W: Write>(mut out: W, kind: &str, n: usize, cell: impl Fn(usize, usize) -> Option<u64>) -> io::Result<()> {
    writeln!(out, "# apsp {kind} matrix")?;
    writeln!(out, "# n {n}")?;
    write!(out, "# ids")?;
    for i in 1..=n {
        write!(out, " {i}")?;
    }
    writeln!(out)?;
    let mut line = String::new();
    for i in 0..n {
        line.clear();
        for j in 0..n {
            if j > 0 {
                line.push(' ');
            }
            match cell(i, j) {
                Some(v) => line.push_str(&v.to_string()),
                None => line.push_str("INF"),
            }
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Parsed body of a matrix file, cells as `None` for `INF`.
fn read_cells<R: BufRead>(reader: R) -> Result<(usize, Vec<Option<u64>>), MatrixFileError> {
    let mut n: Option<usize> = None;
    let mut cells = Vec::new();
    let mut rows = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let err = |msg: String| MatrixFileError::Format { line: lineno, msg };
        if let Some(header) = line.strip_prefix('#') {
            let mut fields = header.split_whitespace();
            match fields.next() {
                Some("n") => {
                    let v = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad n header".into()))?;
                    n = Some(v);
                }
                Some("ids") => {
                    let expect = n.ok_or_else(|| err("ids before n".into()))?;
                    let ids: Vec<&str> = fields.collect();
                    let ascending = ids.len() == expect
                        && ids.iter().enumerate().all(|(i, s)| s.parse::<usize>().ok() == Some(i + 1));
                    if !ascending {
                        return Err(err("ids must list 1..=n in order".into()));
                    }
                }
                _ => {}
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let n = n.ok_or_else(|| err("row before n header".into()))?;
        let before = cells.len();
        for field in line.split_whitespace() {
            if field == "INF" {
                cells.push(None);
            } else {
                cells.push(Some(field.parse().map_err(|_| err(format!("bad cell {field:?}")))?));
            }
        }
        if cells.len() - before != n {
            return Err(err(format!("row has {} cells, expected {n}", cells.len() - before)));
        }
        rows += 1;
    }
    let n = n.ok_or(MatrixFileError::Format { line: 0, msg: "missing n header".into() })?;
    if rows != n {
        return Err(MatrixFileError::Format {
            line: 0,
            msg: format!("{rows} rows, expected {n}"),
        });
    }
    Ok((n, cells))
}

pub fn read_distance_matrix<R: BufRead>(reader: R) -> Result<DistanceMatrix, MatrixFileError> {
    let (n, cells) = read_cells(reader)?;
    if cells.contains(&Some(u64::MAX)) {
        return Err(MatrixFileError::Format {
            line: 0,
            msg: "distance collides with INF sentinel".into(),
        });
    }
    Ok(DistanceMatrix {
        n,
        cells: cells.into_iter().map(|c| c.unwrap_or(u64::MAX)).collect(),
    })
}

pub fn read_precedence_matrix<R: BufRead>(reader: R) -> Result<PrecedenceMatrix, MatrixFileError> {
    let (n, cells) = read_cells(reader)?;
    let mut out = Vec::with_capacity(cells.len());
    for c in cells {
        match c {
            None => out.push(UNSET),
            Some(id) if id >= 1 && id <= n as u64 => out.push(id as u32),
            Some(id) => {
                return Err(MatrixFileError::Format {
                    line: 0,
                    msg: format!("predecessor {id} outside 1..={n}"),
                })
            }
        }
    }
    Ok(PrecedenceMatrix { n, cells: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: u32) -> VertexId {
        VertexId::new(id)
    }

    #[test]
    fn fresh_matrices() {
        let m = DistanceMatrix::new(3);
        assert_eq!(m.get(v(2), v(2)), Weight::ZERO);
        assert_eq!(m.get(v(1), v(3)), Weight::INFINITY);
        let p = PrecedenceMatrix::new(3);
        assert_eq!(p.get(v(1), v(2)), None);
    }

    #[test]
    fn text_round_trip() {
        let mut m = DistanceMatrix::new(3);
        m.set(v(1), v(2), Weight::new(4));
        m.set(v(2), v(1), Weight::new(4));
        let mut buf = Vec::new();
        write_distance_matrix(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "# apsp distance matrix\n# n 3\n# ids 1 2 3\n0 4 INF\n4 0 INF\nINF INF 0\n"
        );
        assert_eq!(read_distance_matrix(&buf[..]).unwrap(), m);

        let mut p = PrecedenceMatrix::new(2);
        p.set(v(1), v(2), Some(v(2)));
        let mut buf = Vec::new();
        write_precedence_matrix(&p, &mut buf).unwrap();
        assert_eq!(read_precedence_matrix(&buf[..]).unwrap(), p);
    }

    #[test]
    fn malformed_files() {
        assert!(read_distance_matrix("# n 2\n0 1\n".as_bytes()).is_err());
        assert!(read_distance_matrix("# n 2\n0 1\n1 x\n".as_bytes()).is_err());
        assert!(read_distance_matrix("# n 2\n0 1 2\n1 0\n".as_bytes()).is_err());
        assert!(read_precedence_matrix("# n 1\n5\n".as_bytes()).is_err());
    }

    #[test]
    fn mismatch_reports_cell() {
        let a = DistanceMatrix::new(3);
        let mut b = a.clone();
        assert_eq!(a.first_mismatch(&b), None);
        b.set(v(2), v(3), Weight::new(9));
        assert_eq!(
            a.first_mismatch(&b),
            Some((v(2), v(3), Weight::INFINITY, Weight::new(9)))
        );
    }
}
