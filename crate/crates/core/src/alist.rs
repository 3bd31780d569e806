//! alist interchange format.
//!
//! ```text
//! n m
//! max_var_degree max_check_degree
//! <n variable degrees>
//! <m check degrees>
//! <n lines: 1-based check neighbors of each variable>
//! <m lines: 1-based variable neighbors of each check>
//! ```
//!
//! Neighbor lines may be zero-padded past the declared degree, as in many
//! published archives. A zero inside the declared degree is an error.

use thiserror::Error;

use crate::graph::{GraphError, TannerGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlistError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
    #[error("line {line}: neighbor index {index} out of range 1..={max}")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        max: usize,
    },
    #[error("check lists disagree with variable lists at check {check}")]
    Inconsistent { check: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_numbers(&mut self, what: &'static str) -> Result<(usize, Vec<usize>), AlistError> {
        for (i, raw) in self.inner.by_ref() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let nums = trimmed
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| AlistError::Malformed {
                        line,
                        msg: format!("expected a non-negative integer, found {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok((line, nums));
        }
        Err(AlistError::Truncated(what))
    }
}

fn expect_len(line: usize, nums: &[usize], want: usize, what: &str) -> Result<(), AlistError> {
    if nums.len() < want {
        return Err(AlistError::Malformed {
            line,
            msg: format!("{what}: expected {want} entries, found {}", nums.len()),
        });
    }
    Ok(())
}

/// Parses an alist document.
pub fn read_alist(text: &str) -> Result<TannerGraph, AlistError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };

    let (line, dims) = lines.next_numbers("dimensions")?;
    if dims.len() != 2 {
        return Err(AlistError::Malformed {
            line,
            msg: "expected \"n m\"".into(),
        });
    }
    let (n, m) = (dims[0], dims[1]);
    let mut g = TannerGraph::new(n, m)?;

    let (line, maxes) = lines.next_numbers("maximum degrees")?;
    if maxes.len() != 2 {
        return Err(AlistError::Malformed {
            line,
            msg: "expected maximum degrees".into(),
        });
    }
    let (max_vdeg, max_cdeg) = (maxes[0], maxes[1]);

    let (line, vdeg) = lines.next_numbers("variable degrees")?;
    expect_len(line, &vdeg, n, "variable degrees")?;
    let (line, cdeg) = lines.next_numbers("check degrees")?;
    expect_len(line, &cdeg, m, "check degrees")?;
    if let Some(d) = vdeg.iter().take(n).find(|&&d| d > max_vdeg) {
        return Err(AlistError::Malformed {
            line,
            msg: format!("variable degree {d} exceeds declared maximum {max_vdeg}"),
        });
    }
    if let Some(d) = cdeg.iter().take(m).find(|&&d| d > max_cdeg) {
        return Err(AlistError::Malformed {
            line,
            msg: format!("check degree {d} exceeds declared maximum {max_cdeg}"),
        });
    }

    for (v, &deg) in vdeg.iter().enumerate().take(n) {
        let (line, nums) = lines.next_numbers("variable neighbor list")?;
        expect_len(line, &nums, deg, "variable neighbor list")?;
        if nums[deg..].iter().any(|&x| x != 0) {
            return Err(AlistError::Malformed {
                line,
                msg: format!("variable {} lists more than {deg} neighbors", v + 1),
            });
        }
        for &c in &nums[..deg] {
            if c == 0 || c > m {
                return Err(AlistError::IndexOutOfRange {
                    line,
                    index: c,
                    max: m,
                });
            }
            g.add_edge(v, c - 1)?;
        }
    }

    for (c, &deg) in cdeg.iter().enumerate().take(m) {
        let (line, nums) = lines.next_numbers("check neighbor list")?;
        expect_len(line, &nums, deg, "check neighbor list")?;
        if nums[deg..].iter().any(|&x| x != 0) {
            return Err(AlistError::Malformed {
                line,
                msg: format!("check {} lists more than {deg} neighbors", c + 1),
            });
        }
        let mut listed = Vec::with_capacity(deg);
        for &v in &nums[..deg] {
            if v == 0 || v > n {
                return Err(AlistError::IndexOutOfRange {
                    line,
                    index: v,
                    max: n,
                });
            }
            listed.push(v - 1);
        }
        listed.sort_unstable();
        if listed != g.chk_neighbors(c) {
            return Err(AlistError::Inconsistent { check: c });
        }
    }
    Ok(g)
}

fn join(nums: impl Iterator<Item = usize>) -> String {
    nums.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Serializes `g` as alist with 1-based indices and no zero padding.
pub fn write_alist(g: &TannerGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n(), g.m()));
    out.push_str(&format!(
        "{} {}\n",
        g.max_var_degree(),
        g.max_check_degree()
    ));
    out.push_str(&join((0..g.n()).map(|v| g.var_degree(v))));
    out.push('\n');
    out.push_str(&join((0..g.m()).map(|c| g.chk_degree(c))));
    out.push('\n');
    for v in 0..g.n() {
        out.push_str(&join(g.var_neighbors(v).iter().map(|&c| c + 1)));
        out.push('\n');
    }
    for c in 0..g.m() {
        out.push_str(&join(g.chk_neighbors(c).iter().map(|&v| v + 1)));
        out.push('\n');
    }
    out
}
