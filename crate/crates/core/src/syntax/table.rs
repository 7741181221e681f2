use std::fmt;

use thiserror::Error;

/// Inputs beyond this would make the row table unreasonably large.
pub const MAX_TABLE_INPUTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: expected header `inputs <n> outputs <m>`")]
    Header { line: usize },
    #[error("at most {MAX_TABLE_INPUTS} inputs are supported, got {0}")]
    TooManyInputs(usize),
    #[error("line {line}: expected `<bits> -> <bits>` or `<bits> -> _`")]
    Row { line: usize },
    #[error("line {line}: expected {expected} bits, found {found}")]
    Width {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate row for input {input:?}")]
    Duplicate { line: usize, input: String },
    #[error("missing row for input {0:?}")]
    Missing(String),
    #[error("expected {expected} rows, got {found}")]
    RowCount { expected: usize, found: usize },
}

/// A partial function from `n`-bit strings to `m`-bit strings.
///
/// Rows are indexed by the input read as a binary number with the first bit most
/// significant, so row `i` holds the value at `bits_of(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    inputs: usize,
    outputs: usize,
    rows: Vec<Option<Vec<bool>>>,
}

impl FunctionTable {
    pub fn new(
        inputs: usize,
        outputs: usize,
        rows: Vec<Option<Vec<bool>>>,
    ) -> Result<Self, TableError> {
        if inputs > MAX_TABLE_INPUTS {
            return Err(TableError::TooManyInputs(inputs));
        }
        if rows.len() != 1 << inputs {
            return Err(TableError::RowCount {
                expected: 1 << inputs,
                found: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(bits) = row {
                if bits.len() != outputs {
                    return Err(TableError::Width {
                        line: i + 2,
                        expected: outputs,
                        found: bits.len(),
                    });
                }
            }
        }
        Ok(FunctionTable {
            inputs,
            outputs,
            rows,
        })
    }

    /// Builds a table from a function evaluated at every input.
    ///
    /// Panics if `f` returns a value of the wrong width.
    pub fn from_fn(
        inputs: usize,
        outputs: usize,
        mut f: impl FnMut(&[bool]) -> Option<Vec<bool>>,
    ) -> Self {
        let rows = (0..1usize << inputs)
            .map(|i| f(&bits_of(i, inputs)))
            .collect();
        FunctionTable::new(inputs, outputs, rows).expect("row widths match")
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[Option<Vec<bool>>] {
        &self.rows
    }

    /// Value at `input`; `None` where the function is undefined.
    pub fn get(&self, input: &[bool]) -> Option<&[bool]> {
        assert_eq!(input.len(), self.inputs);
        self.rows[index_of(input)].as_deref()
    }

    /// `(input, value)` pairs in row order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<bool>, Option<&[bool]>)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| (bits_of(i, self.inputs), row.as_deref()))
    }
}

/// Bits of `index` as an `width`-bit string, most significant first.
pub fn bits_of(index: usize, width: usize) -> Vec<bool> {
    (0..width)
        .map(|j| index >> (width - 1 - j) & 1 == 1)
        .collect()
}

fn index_of(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| acc << 1 | usize::from(b))
}

fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

fn show_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl std::str::FromStr for FunctionTable {
    type Err = TableError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(TableError::Header { line: 1 })?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let (inputs, outputs) = match words.as_slice() {
            ["inputs", n, "outputs", m] => match (n.parse::<usize>(), m.parse::<usize>()) {
                (Ok(n), Ok(m)) => (n, m),
                _ => return Err(TableError::Header { line: header_line }),
            },
            _ => return Err(TableError::Header { line: header_line }),
        };
        if inputs > MAX_TABLE_INPUTS {
            return Err(TableError::TooManyInputs(inputs));
        }

        let mut rows: Vec<Option<Option<Vec<bool>>>> = vec![None; 1 << inputs];
        for (line, text) in lines {
            let (lhs, rhs) = text.split_once("->").ok_or(TableError::Row { line })?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            let input = parse_bits(lhs).ok_or(TableError::Row { line })?;
            if input.len() != inputs {
                return Err(TableError::Width {
                    line,
                    expected: inputs,
                    found: input.len(),
                });
            }
            let value = if rhs == "_" {
                None
            } else {
                let bits = parse_bits(rhs).ok_or(TableError::Row { line })?;
                if bits.len() != outputs {
                    return Err(TableError::Width {
                        line,
                        expected: outputs,
                        found: bits.len(),
                    });
                }
                Some(bits)
            };
            let slot = &mut rows[index_of(&input)];
            if slot.is_some() {
                return Err(TableError::Duplicate {
                    line,
                    input: show_bits(&input),
                });
            }
            *slot = Some(value);
        }

        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| row.ok_or_else(|| TableError::Missing(show_bits(&bits_of(i, inputs)))))
            .collect::<Result<Vec<_>, _>>()?;
        FunctionTable::new(inputs, outputs, rows)
    }
}

impl fmt::Display for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {} outputs {}", self.inputs, self.outputs)?;
        for (input, value) in self.entries() {
            let value = value.map_or_else(|| "_".to_owned(), show_bits);
            writeln!(f, "{} -> {}", show_bits(&input), value)?;
        }
        Ok(())
    }
}
