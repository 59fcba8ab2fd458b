//! Problem files: one module presentation plus optional cone, weight, ideal
//! and bounds.
//!
//! ```text
//! # Euler operator
//! ring n=2 k=2 r=1
//! shifts=[[0,0]]
//! gen: x1 d1 + x2 d2
//! cone=[[1,0],[0,1]]
//! ideal: W1, W2
//! degree_bound=4
//! ```
//!
//! `ring` comes first. `gen` and `rel` may repeat; every other key appears at
//! most once. Expression-valued keys use `:`, data-valued keys use `=`.

use std::fmt;

use dfan_core::flatness::WPoly;
use dfan_core::grammar::{parse_element, parse_monomial_ideal, parse_w_operator};
use dfan_core::weyl::Rational;
use dfan_core::{LinearForm, MonomialIdeal, OpVec, ParseError, RingDescriptor, ShiftMatrix};
use num_traits::{One, Signed, Zero};

/// A parsed problem. `relations` holds `(a_i, Q_i)` for `sum W^(a_i) Q_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: RingDescriptor,
    pub generators: Vec<OpVec>,
    pub element: Option<OpVec>,
    pub degree: Option<Vec<i64>>,
    pub weight: Option<LinearForm>,
    pub cone: Option<Vec<Vec<i64>>>,
    pub ideal: Option<MonomialIdeal>,
    pub relations: Vec<(Vec<u32>, WPoly)>,
    pub degree_bound: Option<u32>,
    pub l_max: Option<u32>,
}

impl ProblemFile {
    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn k(&self) -> usize {
        self.ring.k
    }

    pub fn r(&self) -> usize {
        self.ring.r
    }

    pub fn shifts(&self) -> &ShiftMatrix {
        &self.ring.shifts
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line,
        message: message.into(),
    }
}

/// Nested bracket lists of rationals, e.g. `[[1,0],[0,1/2]]`.
#[derive(Debug, Clone, PartialEq)]
enum Data {
    Num(Rational),
    List(Vec<Data>),
}

struct DataParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
}

impl DataParser {
    fn new(text: &str, line: usize, offset: usize) -> Self {
        DataParser {
            chars: text.chars().collect(),
            pos: 0,
            line,
            offset,
        }
    }

    fn column(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        syntax(self.line, self.column(), message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse_all(mut self) -> Result<Data, ParseError> {
        let d = self.value()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.err("trailing characters"));
        }
        Ok(d)
    }

    fn value(&mut self) -> Result<Data, ParseError> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.skip_ws();
                if self.chars.get(self.pos) == Some(&']') {
                    self.pos += 1;
                    return Ok(Data::List(items));
                }
                loop {
                    items.push(self.value()?);
                    self.skip_ws();
                    match self.chars.get(self.pos) {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Data::List(items));
                        }
                        _ => return Err(self.err("expected ',' or ']'")),
                    }
                }
            }
            Some(c) if *c == '-' || c.is_ascii_digit() => self.number(),
            _ => Err(self.err("expected a number or '['")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<Data, ParseError> {
        let neg = self.chars.get(self.pos) == Some(&'-');
        if neg {
            self.pos += 1;
        }
        let num = self.digits().ok_or_else(|| self.err("expected digits"))?;
        let mut q = Rational::from_integer(num.parse().expect("digit string"));
        if self.chars.get(self.pos) == Some(&'/') {
            self.pos += 1;
            let den = self
                .digits()
                .ok_or_else(|| self.err("expected denominator"))?;
            let den: num_bigint::BigInt = den.parse().expect("digit string");
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            q /= Rational::from_integer(den);
        }
        Ok(Data::Num(if neg { -q } else { q }))
    }
}

fn as_rationals(d: &Data, line: usize) -> Result<Vec<Rational>, ParseError> {
    match d {
        Data::List(items) => items
            .iter()
            .map(|i| match i {
                Data::Num(q) => Ok(q.clone()),
                Data::List(_) => Err(semantic(line, "expected a flat list of numbers")),
            })
            .collect(),
        Data::Num(_) => Err(semantic(line, "expected a list")),
    }
}

fn as_integers(d: &Data, line: usize) -> Result<Vec<i64>, ParseError> {
    as_rationals(d, line)?
        .into_iter()
        .map(|q| {
            if !q.is_integer() {
                return Err(semantic(line, "expected integers"));
            }
            i64::try_from(q.numer()).map_err(|_| semantic(line, "integer out of range"))
        })
        .collect()
}

fn as_naturals(d: &Data, line: usize) -> Result<Vec<u32>, ParseError> {
    as_integers(d, line)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| semantic(line, "expected nonnegative integers")))
        .collect()
}

fn as_matrix(d: &Data, line: usize) -> Result<Vec<Vec<i64>>, ParseError> {
    match d {
        Data::List(rows) => rows.iter().map(|r| as_integers(r, line)).collect(),
        Data::Num(_) => Err(semantic(line, "expected a list of lists")),
    }
}

fn parse_data(text: &str, line: usize, offset: usize) -> Result<Data, ParseError> {
    DataParser::new(text, line, offset).parse_all()
}

fn check_len<T>(v: &[T], k: usize, what: &str, line: usize) -> Result<(), ParseError> {
    if v.len() != k {
        return Err(semantic(
            line,
            format!("{what} needs {k} entries, found {}", v.len()),
        ));
    }
    Ok(())
}

fn parse_ring(
    value: &str,
    line: usize,
    offset: usize,
) -> Result<(usize, usize, usize), ParseError> {
    let mut n = None;
    let mut k = None;
    let mut r = None;
    let mut col = offset;
    for word in value.split(' ') {
        let here = col + 1;
        col += word.chars().count() + 1;
        if word.is_empty() {
            continue;
        }
        let (name, v) = word
            .split_once('=')
            .ok_or_else(|| syntax(line, here, "expected name=value"))?;
        let v: usize = v.parse().map_err(|_| {
            syntax(
                line,
                here + name.len() + 1,
                "expected a nonnegative integer",
            )
        })?;
        let slot = match name {
            "n" => &mut n,
            "k" => &mut k,
            "r" => &mut r,
            _ => {
                return Err(syntax(
                    line,
                    here,
                    format!("unknown ring parameter '{name}'"),
                ))
            }
        };
        if slot.replace(v).is_some() {
            return Err(semantic(
                line,
                format!("ring parameter '{name}' given twice"),
            ));
        }
    }
    match (n, k, r) {
        (Some(n), Some(k), Some(r)) => Ok((n, k, r)),
        _ => Err(semantic(line, "ring needs n, k and r")),
    }
}

/// Splits `key<sep>value`, returning the key, separator and the character
/// offset of the value.
fn split_key(line: &str) -> Option<(&str, char, &str, usize)> {
    let end = line
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(line.len());
    let key = &line[..end];
    let rest = &line[end..];
    let trimmed = rest.trim_start();
    let sep = trimmed.chars().next()?;
    let value = &trimmed[sep.len_utf8()..];
    let offset = line.len() - value.len();
    Some((key, sep, value, offset))
}

/// Parses a problem file, reporting the line and column of the first error.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut ring: Option<(usize, usize, usize)> = None;
    let mut shifts: Option<(Vec<Vec<i64>>, usize)> = None;
    let mut gens: Vec<(String, usize, usize)> = Vec::new();
    let mut problem_lines: Vec<(usize, &str, char, String, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        if ring.is_none() {
            let rest = content
                .strip_prefix("ring")
                .filter(|r| r.starts_with(' '))
                .ok_or_else(|| {
                    syntax(
                        line_no,
                        indent + 1,
                        "the first line must be 'ring n=.. k=.. r=..'",
                    )
                })?;
            let (n, k, r) = parse_ring(rest, line_no, indent + 4)?;
            ring = Some((n, k, r));
            continue;
        }
        let (key, sep, value, offset) = split_key(content)
            .ok_or_else(|| syntax(line_no, indent + content.len() + 1, "expected ':' or '='"))?;
        let offset = indent + offset;
        let expected = match key {
            "gen" | "element" | "ideal" => ':',
            "rel" => '[',
            "shifts" | "degree" | "weight" | "cone" | "degree_bound" | "l_max" => '=',
            "ring" => return Err(semantic(line_no, "ring given twice")),
            _ => return Err(syntax(line_no, indent + 1, format!("unknown key '{key}'"))),
        };
        if sep != expected {
            return Err(syntax(
                line_no,
                offset,
                format!("expected '{expected}' after '{key}'"),
            ));
        }
        match key {
            "gen" => gens.push((value.to_string(), line_no, offset)),
            "shifts" => {
                if shifts.is_some() {
                    return Err(semantic(line_no, "shifts given twice"));
                }
                let d = parse_data(value, line_no, offset)?;
                shifts = Some((as_matrix(&d, line_no)?, line_no));
            }
            "rel" => problem_lines.push((line_no, "rel", sep, format!("[{value}"), offset - 1)),
            _ => {
                if problem_lines.iter().any(|(_, k, ..)| *k == key) {
                    return Err(semantic(line_no, format!("{key} given twice")));
                }
                let key: &'static str = match key {
                    "element" => "element",
                    "ideal" => "ideal",
                    "degree" => "degree",
                    "weight" => "weight",
                    "cone" => "cone",
                    "degree_bound" => "degree_bound",
                    _ => "l_max",
                };
                problem_lines.push((line_no, key, sep, value.to_string(), offset));
            }
        }
    }
    let (n, k, r) = ring.ok_or_else(|| semantic(1, "missing ring line"))?;
    let shift_matrix = match shifts {
        None => ShiftMatrix::zero(k, r),
        Some((columns, line)) => {
            check_len(&columns, r, "shifts", line)?;
            for c in &columns {
                check_len(c, k, "each shift column", line)?;
            }
            ShiftMatrix::new(columns).map_err(|e| semantic(line, e.to_string()))?
        }
    };
    let ring =
        RingDescriptor::new(n, k, r, shift_matrix).map_err(|e| semantic(1, e.to_string()))?;
    let mut generators = Vec::new();
    for (text, line, offset) in gens {
        let g = parse_element(&text, n, r).map_err(|e| e.at_line(line, offset))?;
        if g.is_zero() {
            return Err(semantic(line, "generators must be nonzero"));
        }
        if !g.is_t_free() {
            return Err(semantic(line, "generators must not contain t"));
        }
        generators.push(g);
    }
    let mut out = ProblemFile {
        ring,
        generators,
        element: None,
        degree: None,
        weight: None,
        cone: None,
        ideal: None,
        relations: Vec::new(),
        degree_bound: None,
        l_max: None,
    };
    for (line, key, _, value, offset) in problem_lines {
        match key {
            "element" => {
                let e = parse_element(&value, n, r).map_err(|e| e.at_line(line, offset))?;
                if !e.is_t_free() {
                    return Err(semantic(line, "the element must not contain t"));
                }
                out.element = Some(e);
            }
            "ideal" => {
                out.ideal =
                    Some(parse_monomial_ideal(&value, k).map_err(|e| e.at_line(line, offset))?)
            }
            "degree" => {
                let v = as_integers(&parse_data(&value, line, offset)?, line)?;
                check_len(&v, k, "degree", line)?;
                out.degree = Some(v);
            }
            "weight" => {
                let v = as_rationals(&parse_data(&value, line, offset)?, line)?;
                check_len(&v, k, "weight", line)?;
                out.weight = Some(LinearForm::new(v).map_err(|e| semantic(line, e.to_string()))?);
            }
            "cone" => {
                let rows = as_matrix(&parse_data(&value, line, offset)?, line)?;
                check_len(&rows, k, "cone", line)?;
                for row in &rows {
                    check_len(row, k, "each cone row", line)?;
                }
                out.cone = Some(rows);
            }
            "degree_bound" | "l_max" => {
                let v = match parse_data(&value, line, offset)? {
                    Data::Num(q) if q.is_integer() && !q.is_negative() => u32::try_from(q.numer())
                        .map_err(|_| semantic(line, "bound out of range"))?,
                    _ => return Err(semantic(line, "expected a nonnegative integer")),
                };
                if key == "l_max" {
                    out.l_max = Some(v);
                } else {
                    out.degree_bound = Some(v);
                }
            }
            _ => {
                // `rel [a_1,..,a_k]: Q`
                let close = value
                    .find(']')
                    .ok_or_else(|| syntax(line, offset + 1, "expected ']'"))?;
                let a = as_naturals(&parse_data(&value[..=close], line, offset)?, line)?;
                check_len(&a, k, "relation exponent", line)?;
                let rest = &value[close + 1..];
                let body = rest
                    .trim_start()
                    .strip_prefix(':')
                    .ok_or_else(|| syntax(line, offset + close + 2, "expected ':'"))?;
                let body_offset = offset + value.len() - body.len();
                let q = parse_w_operator(body, n, k).map_err(|e| e.at_line(line, body_offset))?;
                out.relations.push((a, q));
            }
        }
    }
    Ok(out)
}

/// `--weight` text such as `[1,1/2]`; the brackets are optional.
pub fn parse_weight_text(text: &str, k: usize) -> Result<LinearForm, ParseError> {
    let t = text.trim();
    let wrapped = if t.starts_with('[') {
        t.to_string()
    } else {
        format!("[{t}]")
    };
    let v = as_rationals(&parse_data(&wrapped, 1, 0)?, 1)?;
    check_len(&v, k, "weight", 1)?;
    LinearForm::new(v).map_err(|e| semantic(1, e.to_string()))
}

/// `--cone` text: the rows `L_1, ..., L_k`, e.g. `[[1,0],[0,1]]`.
pub fn parse_cone_text(text: &str, k: usize) -> Result<Vec<Vec<i64>>, ParseError> {
    let rows = as_matrix(&parse_data(text.trim(), 1, 0)?, 1)?;
    check_len(&rows, k, "cone", 1)?;
    for row in &rows {
        check_len(row, k, "each cone row", 1)?;
    }
    Ok(rows)
}

fn format_list<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn format_matrix(rows: &[Vec<i64>]) -> String {
    let parts: Vec<String> = rows.iter().map(|r| format_list(r)).collect();
    format!("[{}]", parts.join(","))
}

fn format_element(v: &OpVec) -> String {
    if v.rank() == 1 {
        v.component(0).to_string()
    } else {
        v.to_string()
    }
}

fn format_ideal(h: &MonomialIdeal) -> String {
    if h.generators().is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = h
        .generators()
        .iter()
        .map(|g| dfan_core::flatness::format_w_monomial(g))
        .collect();
    parts.join(", ")
}

fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ProblemFile {
    /// Canonical text; `parse_problem` of it yields an equal value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring n={} k={} r={}", self.n(), self.k(), self.r())?;
        writeln!(f, "shifts={}", format_matrix(self.shifts().columns()))?;
        for g in &self.generators {
            writeln!(f, "gen: {}", format_element(g))?;
        }
        if let Some(e) = &self.element {
            writeln!(f, "element: {}", format_element(e))?;
        }
        if let Some(d) = &self.degree {
            writeln!(f, "degree={}", format_list(d))?;
        }
        if let Some(l) = &self.weight {
            let parts: Vec<String> = l.coeffs().iter().map(format_rational).collect();
            writeln!(f, "weight=[{}]", parts.join(","))?;
        }
        if let Some(c) = &self.cone {
            writeln!(f, "cone={}", format_matrix(c))?;
        }
        if let Some(h) = &self.ideal {
            writeln!(f, "ideal: {}", format_ideal(h))?;
        }
        for (a, q) in &self.relations {
            writeln!(f, "rel {}: {}", format_list(a), q.to_text())?;
        }
        if let Some(b) = self.degree_bound {
            writeln!(f, "degree_bound={b}")?;
        }
        if let Some(l) = self.l_max {
            writeln!(f, "l_max={l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER: &str = "ring n=2 k=2 r=1\nshifts=[[0,0]]\ngen: x1 d1 + x2 d2";

    #[test]
    fn euler_problem() {
        let p = parse_problem(EULER).unwrap();
        assert_eq!((p.n(), p.k(), p.r()), (2, 2, 1));
        assert_eq!(p.generators.len(), 1);
        assert_eq!(
            p.to_string(),
            "ring n=2 k=2 r=1\nshifts=[[0,0]]\ngen: x1 d1 + x2 d2\n"
        );
    }

    #[test]
    fn out_of_range_variable() {
        let err = parse_problem("ring n=2 k=2 r=1\ngen: x3 d1").unwrap_err();
        assert_eq!(
            err,
            ParseError::Semantic {
                line: 2,
                message: "x3 out of range (limit 2)".into()
            }
        );
        assert!(err.to_string().contains("x3 out of range"));
    }

    #[test]
    fn k_larger_than_n() {
        assert!(matches!(
            parse_problem("ring n=1 k=2 r=1\ngen: d1"),
            Err(ParseError::Semantic { line: 1, .. })
        ));
    }

    #[test]
    fn syntax_positions() {
        let err = parse_problem("ring n=2 k=2 r=1\n# note\ngen: x1 ++ d1").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 3,
                column: 10,
                message: "expected a term".into()
            }
        );
        let err = parse_problem("ring n=2 k=2 r=1\ncone=[[1,0],[0 1]]").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Syntax {
                    line: 2,
                    column: 16,
                    ..
                }
            ),
            "{err:?}"
        );
        assert!(matches!(
            parse_problem("ring n=2 k=2 r=1\nfoo: 1"),
            Err(ParseError::Syntax {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_problem("gen: d1"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn full_round_trip() {
        let text = "ring n=2 k=2 r=2\nshifts=[[0,1],[-1,0]]\n\
            gen: x1 d1 e1 - 1/2 d2 e2  # comment\n\
            element: x1 e2\ndegree=[1,-2]\nweight=[1/2,3]\ncone=[[1,0],[1,1]]\n\
            ideal: W1^2, W1 W2\nrel [1,0]: W2 x1 d2 - 3\nrel [0,2]: 0\n\
            degree_bound=5\nl_max=7\n";
        let p = parse_problem(text).unwrap();
        let printed = p.to_string();
        assert_eq!(parse_problem(&printed).unwrap(), p);
        assert_eq!(p.relations.len(), 2);
        assert!(printed.contains("rel [1,0]: "));
    }

    #[test]
    fn zero_generator_rejected() {
        assert!(matches!(
            parse_problem("ring n=1 k=1 r=1\ngen: 0"),
            Err(ParseError::Semantic { line: 2, .. })
        ));
    }
}
