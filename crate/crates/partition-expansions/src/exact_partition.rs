//! Exact ground truth: p(0..=n_max) as big integers via Euler's
//! pentagonal-number recurrence, exact quotients, finite-difference signs and
//! a binary cache format.
//!
//! # Cache file format
//!
//! All integers are little-endian.
//!
//! | bytes | content |
//! |-------|---------|
//! | 8     | magic `b"PARTTAB1"` |
//! | 8     | `u64` count of entries (`n_max + 1`) |
//! | per entry: 4 | `u32` byte length `L` of the magnitude |
//! | per entry: L | magnitude, least significant byte first |

use std::io::{Read, Write};
use std::path::Path;

use rug::integer::Order;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{HPReal, PrecisionContext};

const MAGIC: &[u8; 8] = b"PARTTAB1";

/// Memoized exact values p(0), …, p(n_max).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPartitionTable {
    values: Vec<Integer>,
}

/// Sign of an exact integer quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl ExactPartitionTable {
    /// Builds p(0..=n_max) with the pentagonal recurrence
    /// p(n) = Σ_{j≥1} (−1)^{j+1} [p(n − j(3j−1)/2) + p(n − j(3j+1)/2)].
    pub fn build(n_max: u64) -> Self {
        let len = usize::try_from(n_max).expect("n_max fits usize") + 1;
        let mut values: Vec<Integer> = Vec::with_capacity(len);
        values.push(Integer::from(1));
        for n in 1..len {
            let mut acc = Integer::new();
            let mut j = 1usize;
            loop {
                let g1 = j * (3 * j - 1) / 2;
                if g1 > n {
                    break;
                }
                let g2 = j * (3 * j + 1) / 2;
                if j % 2 == 1 {
                    acc += &values[n - g1];
                    if g2 <= n {
                        acc += &values[n - g2];
                    }
                } else {
                    acc -= &values[n - g1];
                    if g2 <= n {
                        acc -= &values[n - g2];
                    }
                }
                j += 1;
            }
            values.push(acc);
        }
        Self { values }
    }

    /// Largest index held by the table.
    pub fn n_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// All values p(0..=n_max).
    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    /// p(n), or a sizing error if `n > n_max`.
    pub fn get(&self, n: u64) -> Result<&Integer> {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.values.get(i))
            .ok_or(Error::OracleTooSmall {
                required: n,
                available: self.n_max(),
            })
    }

    /// Writes the table in the documented little-endian cache format.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.values.len() as u64).to_le_bytes())?;
        for v in &self.values {
            let bytes = v.to_digits::<u8>(Order::Lsf);
            let len = u32::try_from(bytes.len())
                .map_err(|_| Error::Cache("entry longer than u32::MAX bytes".into()))?;
            w.write_all(&len.to_le_bytes())?;
            w.write_all(&bytes)?;
        }
        Ok(())
    }

    /// Reads a table in the documented cache format and re-validates it
    /// against the recurrence.
    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Cache("bad magic".into()));
        }
        let mut word = [0u8; 8];
        r.read_exact(&mut word)?;
        let count = u64::from_le_bytes(word);
        if count == 0 {
            return Err(Error::Cache("empty table".into()));
        }
        let mut values = Vec::with_capacity(count.min(1 << 20) as usize);
        for _ in 0..count {
            let mut len = [0u8; 4];
            r.read_exact(&mut len)?;
            let mut bytes = vec![0u8; u32::from_le_bytes(len) as usize];
            r.read_exact(&mut bytes)?;
            values.push(Integer::from_digits(&bytes, Order::Lsf));
        }
        let table = Self { values };
        if table != Self::build(table.n_max()) {
            return Err(Error::Cache("values disagree with the recurrence".into()));
        }
        Ok(table)
    }

    /// Saves the table to `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(file))
    }

    /// Loads a table from `path`.
    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(file))
    }

    /// Loads `path` if it exists and reaches `n_max`, otherwise builds the
    /// table and (re)writes the cache.
    pub fn load_or_build(path: &Path, n_max: u64) -> Result<Self> {
        if path.exists() {
            let table = Self::load(path)?;
            if table.n_max() >= n_max {
                return Ok(table);
            }
        }
        let table = Self::build(n_max);
        table.save(path)?;
        Ok(table)
    }
}

/// Convenience wrapper for [`ExactPartitionTable::build`].
pub fn build_table(n_max: u64) -> ExactPartitionTable {
    ExactPartitionTable::build(n_max)
}

/// p(n+k)/p(n) as an exact rational.
pub fn exact_quotient_rational(table: &ExactPartitionTable, n: u64, k: u64) -> Result<Rational> {
    if n == 0 || k == 0 {
        return Err(Error::Domain(format!(
            "quotient requires n >= 1 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    let num = table.get(n + k)?;
    let den = table.get(n)?;
    Ok(Rational::from((num.clone(), den.clone())))
}

/// p(n+k)/p(n) rounded to the context precision.
pub fn exact_quotient(
    table: &ExactPartitionTable,
    n: u64,
    k: u64,
    ctx: &PrecisionContext,
) -> Result<HPReal> {
    let q = exact_quotient_rational(table, n, k)?;
    Ok(Float::with_val(ctx.prec(), &q))
}

/// Sign of Δ^r_j p(n) = Σ_{i=0}^{r} (−1)^i C(r, i) p(n − i·j).
pub fn delta_sign(table: &ExactPartitionTable, r: u32, j: u64, n: u64) -> Result<Sign> {
    if r == 0 || j == 0 {
        return Err(Error::Domain("delta_sign requires r >= 1 and j >= 1".into()));
    }
    if n < u64::from(r) * j {
        return Err(Error::Range(format!("n = {n} is smaller than r*j = {}", u64::from(r) * j)));
    }
    let mut acc = Integer::new();
    for i in 0..=r {
        let term = Integer::from(Integer::binomial_u(r, i)) * table.get(n - u64::from(i) * j)?;
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(match acc.cmp0() {
        std::cmp::Ordering::Less => Sign::Negative,
        std::cmp::Ordering::Equal => Sign::Zero,
        std::cmp::Ordering::Greater => Sign::Positive,
    })
}

/// Counts the partitions of `n` by walking every partition explicitly
/// (parts in non-increasing order). Independent of the recurrence; intended
/// for cross-checking small values only.
pub fn enumerate_partition_count(n: u32) -> u64 {
    fn walk(remaining: u32, max_part: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (1..=max_part.min(remaining))
            .map(|part| walk(remaining - part, part))
            .sum()
    }
    walk(n, n)
}

/// Whether p(n)² ≥ p(n−1)·p(n+1), compared exactly.
pub fn is_log_concave_at(table: &ExactPartitionTable, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("log-concavity requires n >= 1".into()));
    }
    let (lhs, rhs) = log_concavity_sides(table, n)?;
    Ok(rhs >= lhs)
}

/// (p(n−1)·p(n+1), p(n)²).
pub fn log_concavity_sides(table: &ExactPartitionTable, n: u64) -> Result<(Integer, Integer)> {
    let lhs = Integer::from(table.get(n - 1)? * table.get(n + 1)?);
    let rhs = Integer::from(table.get(n)?.square_ref());
    Ok((lhs, rhs))
}
