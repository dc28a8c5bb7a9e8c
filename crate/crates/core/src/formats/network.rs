//! Line-oriented network files:
//!
//! ```text
//! inputs 3
//! flags no-inverters
//! g0 = MAJ(x0, x1, ~g1)
//! output g0
//! ```
//!
//! Gates may also be numbered from `n` as in published listings, where
//! `x<i>` with `i >= n` names gate `i - n`; such files are renumbered from 0.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::netcore::{Constraints, Gate, Literal, LogicNetwork, Operand};

pub fn emit_network(net: &LogicNetwork) -> String {
    let mut out = String::new();
    writeln!(out, "inputs {}", net.n()).unwrap();
    let c = net.constraints();
    let mut flags = Vec::new();
    if c.leafy {
        flags.push("leafy");
    }
    if !c.inverters_allowed {
        flags.push("no-inverters");
    }
    if !flags.is_empty() {
        writeln!(out, "flags {}", flags.join(" ")).unwrap();
    }
    for (k, g) in net.gates().iter().enumerate() {
        let [a, b, c] = g.inputs;
        writeln!(out, "g{k} = MAJ({a}, {b}, {c})").unwrap();
    }
    writeln!(out, "output {}", net.output()).unwrap();
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Word(&'a str),
    Tilde,
    Eq,
    Open,
    Close,
    Comma,
}

struct Lexed<'a> {
    line: usize,
    toks: Vec<(usize, Tok<'a>)>,
}

fn lex(line_no: usize, line: &str) -> Result<Lexed<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut toks = Vec::new();
    let bytes = code.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            b' ' | b'\t' | b'\r' => i += 1,
            b'~' => {
                toks.push((col, Tok::Tilde));
                i += 1
            }
            b'=' => {
                toks.push((col, Tok::Eq));
                i += 1
            }
            b'(' => {
                toks.push((col, Tok::Open));
                i += 1
            }
            b')' => {
                toks.push((col, Tok::Close));
                i += 1
            }
            b',' => {
                toks.push((col, Tok::Comma));
                i += 1
            }
            c if c.is_ascii_alphanumeric() || c == b'-' || c == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'-' || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((col, Tok::Word(&code[start..i])));
            }
            _ => {
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("unexpected character {:?}", c as char),
                ))
            }
        }
    }
    Ok(Lexed {
        line: line_no,
        toks,
    })
}

fn number(s: &str, line: usize, col: usize) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::parse(line, col, format!("expected a number, got {s:?}")))
}

/// Operand with gate references still in file numbering.
#[derive(Clone, Copy)]
enum RawOperand {
    Const(bool),
    Gate(usize),
    /// `x<i>` that may turn out to be a gate in published numbering.
    X(usize),
}

struct Cursor<'a, 'b> {
    lexed: &'b Lexed<'a>,
    pos: usize,
}

impl<'a> Cursor<'a, '_> {
    fn col(&self) -> usize {
        self.lexed
            .toks
            .get(self.pos)
            .map(|t| t.0)
            .unwrap_or_else(|| self.lexed.toks.last().map_or(1, |t| t.0 + 1))
    }

    fn next(&mut self) -> Option<Tok<'a>> {
        let t = self.lexed.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok<'static>, what: &str) -> Result<()> {
        let col = self.col();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(Error::parse(
                self.lexed.line,
                col,
                format!("expected {what}"),
            )),
        }
    }

    fn word(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let col = self.col();
        match self.next() {
            Some(Tok::Word(w)) => Ok((col, w)),
            _ => Err(Error::parse(
                self.lexed.line,
                col,
                format!("expected {what}"),
            )),
        }
    }

    fn end(&mut self) -> Result<()> {
        if self.pos < self.lexed.toks.len() {
            return Err(Error::parse(self.lexed.line, self.col(), "trailing tokens"));
        }
        Ok(())
    }

    fn operand(&mut self) -> Result<(bool, RawOperand)> {
        let mut inverted = false;
        if self.lexed.toks.get(self.pos).map(|t| &t.1) == Some(&Tok::Tilde) {
            self.pos += 1;
            inverted = true;
        }
        let (col, w) = self.word("an operand")?;
        let line = self.lexed.line;
        let op = match w {
            "0" => RawOperand::Const(false),
            "1" => RawOperand::Const(true),
            _ if w.starts_with('x') => RawOperand::X(number(&w[1..], line, col + 1)?),
            _ if w.starts_with('g') => RawOperand::Gate(number(&w[1..], line, col + 1)?),
            _ => return Err(Error::parse(line, col, format!("unknown operand {w:?}"))),
        };
        Ok((inverted, op))
    }
}

struct RawGate {
    line: usize,
    label: usize,
    ops: [(bool, RawOperand); 3],
}

pub fn parse_network(text: &str) -> Result<LogicNetwork> {
    let mut n: Option<usize> = None;
    let mut leafy = false;
    let mut inverters = true;
    let mut seen_flags = false;
    let mut gates: Vec<RawGate> = Vec::new();
    let mut output: Option<(usize, (bool, RawOperand))> = None;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let lexed = lex(line_no, line)?;
        if lexed.toks.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            lexed: &lexed,
            pos: 0,
        };
        let (col, head) = cur.word("a directive")?;
        if output.is_some() {
            return Err(Error::parse(line_no, col, "content after the output line"));
        }
        match head {
            "inputs" => {
                if n.is_some() {
                    return Err(Error::parse(line_no, col, "duplicate inputs line"));
                }
                let (c, w) = cur.word("the input count")?;
                n = Some(number(w, line_no, c)?);
                cur.end()?;
            }
            _ if n.is_none() => {
                return Err(Error::parse(line_no, col, "expected `inputs <n>` first"));
            }
            "flags" => {
                if seen_flags || !gates.is_empty() {
                    return Err(Error::parse(line_no, col, "flags must precede the gates"));
                }
                seen_flags = true;
                while cur.pos < lexed.toks.len() {
                    let (c, w) = cur.word("a flag")?;
                    match w {
                        "leafy" => leafy = true,
                        "no-inverters" => inverters = false,
                        _ => return Err(Error::parse(line_no, c, format!("unknown flag {w:?}"))),
                    }
                }
            }
            "output" => {
                let op = cur.operand()?;
                cur.end()?;
                output = Some((line_no, op));
            }
            _ if head.starts_with('g') => {
                let label = number(&head[1..], line_no, col + 1)?;
                cur.expect(Tok::Eq, "`=`")?;
                let (c, w) = cur.word("MAJ")?;
                if !w.eq_ignore_ascii_case("maj") {
                    return Err(Error::parse(line_no, c, format!("unknown gate type {w:?}")));
                }
                cur.expect(Tok::Open, "`(`")?;
                let a = cur.operand()?;
                cur.expect(Tok::Comma, "`,`")?;
                let b = cur.operand()?;
                cur.expect(Tok::Comma, "`,`")?;
                let c3 = cur.operand()?;
                cur.expect(Tok::Close, "`)`")?;
                cur.end()?;
                gates.push(RawGate {
                    line: line_no,
                    label,
                    ops: [a, b, c3],
                });
            }
            _ => {
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("unknown directive {head:?}"),
                ))
            }
        }
    }

    let n = n.ok_or_else(|| Error::parse(1, 1, "missing `inputs <n>` line"))?;
    let (out_line, out_op) = output
        .ok_or_else(|| Error::parse(text.lines().count().max(1), 1, "missing `output` line"))?;

    // Gate labels start at 0, or at n for published numbering.
    let offset = match gates.first() {
        Some(g) if g.label == 0 => 0,
        Some(g) if g.label == n => n,
        Some(g) => {
            return Err(Error::parse(
                g.line,
                1,
                format!("gate numbering must start at g0 or g{n}"),
            ))
        }
        None => 0,
    };
    for (k, g) in gates.iter().enumerate() {
        if g.label != k + offset {
            return Err(Error::parse(
                g.line,
                1,
                format!("expected gate g{}, found g{}", k + offset, g.label),
            ));
        }
    }

    let label = |k: usize| format!("g{}", k + offset);
    let resolve = |(inv, raw): (bool, RawOperand), owner: Option<usize>| -> Result<Literal> {
        let who = owner.map_or_else(|| "output".to_string(), label);
        let gate_ref = |j: usize| -> Result<Operand> {
            if j < offset {
                return Err(Error::Semantic {
                    gate: who.clone(),
                    message: format!("gate reference g{j} below the first gate g{offset}"),
                });
            }
            let j = j - offset;
            let limit = owner.unwrap_or(gates.len());
            if j >= limit {
                return Err(Error::Semantic {
                    gate: who.clone(),
                    message: format!("forward reference to {}", label(j)),
                });
            }
            Ok(Operand::Gate(j as u32))
        };
        let op = match raw {
            RawOperand::Const(v) => Operand::Const(v),
            RawOperand::X(i) if i < n => Operand::Input(i as u32),
            RawOperand::X(i) if offset > 0 => gate_ref(i)?,
            RawOperand::X(i) => {
                return Err(Error::Semantic {
                    gate: who,
                    message: format!("input x{i} out of range for {n} inputs"),
                })
            }
            RawOperand::Gate(j) => gate_ref(j)?,
        };
        if inv && !inverters {
            return Err(Error::Semantic {
                gate: who,
                message: "inverted operand under no-inverters".into(),
            });
        }
        Ok(Literal::new(op, inv))
    };

    let mut built = Vec::with_capacity(gates.len());
    for (k, g) in gates.iter().enumerate() {
        let lits = [
            resolve(g.ops[0], Some(k))?,
            resolve(g.ops[1], Some(k))?,
            resolve(g.ops[2], Some(k))?,
        ];
        let gate = Gate::new(lits);
        if !gate.has_distinct_operands() {
            return Err(Error::Semantic {
                gate: label(k),
                message: "duplicate operand".into(),
            });
        }
        built.push(gate);
    }
    let output = resolve(out_op, None).map_err(|e| match e {
        Error::Semantic { message, .. } => Error::Semantic {
            gate: format!("output (line {out_line})"),
            message,
        },
        e => e,
    })?;
    let constraints = Constraints::new(built.len())
        .with_inverters(inverters)
        .with_leafy(leafy);
    LogicNetwork::with_output(n, constraints, built, output).map_err(|v| Error::Semantic {
        gate: v.gate.map_or_else(|| "network".to_string(), label),
        message: v.message,
    })
}
