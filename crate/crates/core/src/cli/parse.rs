//! The knot expression language.
//!
//! ```text
//! knot := "unknot" | term ("#" term)*        followed by an optional "ribbon"
//! term := "2b(" INT "/" INT ")" ("^" INT)?
//!       | "seifert(" rows ")" "ribbon"?
//! rows := "[" row ("," row)* "]"
//! row  := "[" INT ("," INT)* "]"
//! ```
//!
//! Whitespace is ignored between tokens. `ribbon` may follow any term; a
//! single occurrence marks the whole knot.

use std::fmt;

use num_bigint::BigInt;

use crate::abelian::IntMatrix;
use crate::knots::{KnotError, KnotSpec, KnotSummand, SeifertMatrix, TwoBridgeKnot};

/// Largest number of summands a `^N` expansion may produce.
pub const MAX_SUMMANDS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    /// Malformed input.
    Syntax,
    /// Two-bridge `p` even or below 3.
    EvenP,
    /// Two-bridge `gcd(p, q) ≠ 1`.
    NotCoprime,
    /// Two-bridge `q` outside `0 < q < p`.
    QOutOfRange,
    /// Seifert matrix not square (or ragged).
    NonSquare,
    /// Seifert matrix of odd size or with `det(V − Vᵀ) ≠ 1`.
    NonUnimodular,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E001",
            ErrorCode::EvenP => "E002",
            ErrorCode::NotCoprime => "E003",
            ErrorCode::QOutOfRange => "E004",
            ErrorCode::NonSquare => "E005",
            ErrorCode::NonUnimodular => "E006",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub code: ErrorCode,
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: {}",
            self.code.as_str(),
            self.position,
            self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error(&self, code: ErrorCode, at: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            code,
            position: at,
            message: message.into(),
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(ErrorCode::Syntax, self.pos, format!("expected `{token}`")))
        }
    }

    fn integer(&mut self, signed: bool) -> Result<(BigInt, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let sign = usize::from(signed && rest.starts_with('-'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(ErrorCode::Syntax, start, "expected an integer"));
        }
        self.pos += sign + digits;
        let value = self.src[start..self.pos].parse().expect("validated digits");
        Ok((value, start))
    }

    fn small(&mut self) -> Result<(u64, usize), ParseError> {
        let (v, at) = self.integer(false)?;
        let v =
            u64::try_from(v).map_err(|_| self.error(ErrorCode::Syntax, at, "integer too large"))?;
        Ok((v, at))
    }

    fn two_bridge(&mut self, start: usize) -> Result<Vec<KnotSummand>, ParseError> {
        self.expect("(")?;
        let (p, _) = self.small()?;
        self.expect("/")?;
        let (q, _) = self.small()?;
        self.expect(")")?;
        let k = TwoBridgeKnot::new(p, q).map_err(|e| {
            let code = match e {
                KnotError::EvenP { .. } => ErrorCode::EvenP,
                KnotError::NotCoprime { .. } => ErrorCode::NotCoprime,
                _ => ErrorCode::QOutOfRange,
            };
            self.error(code, start, e.to_string())
        })?;
        let count = if self.eat("^") {
            let (n, at) = self.small()?;
            if n == 0 || n as usize > MAX_SUMMANDS {
                return Err(self.error(
                    ErrorCode::Syntax,
                    at,
                    format!("power must be between 1 and {MAX_SUMMANDS}"),
                ));
            }
            n as usize
        } else {
            1
        };
        Ok(vec![KnotSummand::TwoBridge(k); count])
    }

    fn seifert(&mut self, start: usize) -> Result<KnotSummand, ParseError> {
        self.expect("(")?;
        self.expect("[")?;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        loop {
            self.expect("[")?;
            let mut row = vec![self.integer(true)?.0];
            while self.eat(",") {
                row.push(self.integer(true)?.0);
            }
            self.expect("]")?;
            rows.push(row);
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        self.expect(")")?;
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(self.error(ErrorCode::NonSquare, start, "rows have different lengths"));
        }
        let n = rows.len();
        let m = IntMatrix::new(n, cols, rows.into_iter().flatten().collect())
            .expect("rectangular by construction");
        SeifertMatrix::new(m)
            .map(KnotSummand::Seifert)
            .map_err(|e| {
                let code = match e {
                    KnotError::NonSquareSeifert { .. } => ErrorCode::NonSquare,
                    _ => ErrorCode::NonUnimodular,
                };
                self.error(code, start, e.to_string())
            })
    }
}

/// Parses a knot expression; see the module documentation for the grammar.
pub fn parse_knot(text: &str) -> Result<KnotSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let mut spec = KnotSpec::unknot();
    if p.eat("unknot") {
        spec.ribbon = p.eat("ribbon");
    } else {
        loop {
            p.skip_ws();
            let start = p.pos;
            if p.eat("2b") {
                spec.summands.extend(p.two_bridge(start)?);
            } else if p.eat("seifert") {
                spec.summands.push(p.seifert(start)?);
            } else {
                return Err(p.error(
                    ErrorCode::Syntax,
                    start,
                    "expected `2b(`, `seifert(` or `unknot`",
                ));
            }
            if spec.summands.len() > MAX_SUMMANDS {
                return Err(p.error(
                    ErrorCode::Syntax,
                    start,
                    format!("more than {MAX_SUMMANDS} summands"),
                ));
            }
            if p.eat("ribbon") {
                spec.ribbon = true;
            }
            if !p.eat("#") {
                break;
            }
        }
    }
    if !p.at_end() {
        return Err(p.error(ErrorCode::Syntax, p.pos, "unexpected trailing input"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> &'static str {
        parse_knot(text).unwrap_err().code.as_str()
    }

    #[test]
    fn two_bridge_terms() {
        let k = parse_knot("2b(9/4)").unwrap();
        assert_eq!(
            k.summands,
            vec![KnotSummand::TwoBridge(TwoBridgeKnot::new(9, 4).unwrap())]
        );
        assert_eq!(parse_knot(" 2b( 9 / 4 ) ^ 3 ").unwrap().summands.len(), 3);
        assert_eq!(parse_knot("2b(9/4)^110").unwrap().summands.len(), 110);
        assert!(parse_knot("2b(9/2)").is_ok());
        assert!(!parse_knot("2b(9/4)").unwrap().ribbon);
        assert!(parse_knot("2b(9/4) ribbon").unwrap().ribbon);
    }

    #[test]
    fn seifert_terms() {
        let k = parse_knot("seifert([[-1,1],[0,-1]]) # 2b(3/1)").unwrap();
        assert_eq!(k.summands.len(), 2);
        assert!(matches!(k.summands[0], KnotSummand::Seifert(_)));
        assert!(
            parse_knot("seifert([[-1,1],[0,-1]]) ribbon")
                .unwrap()
                .ribbon
        );
    }

    #[test]
    fn unknot() {
        assert_eq!(parse_knot("unknot").unwrap(), KnotSpec::unknot());
        assert!(parse_knot("  unknot ribbon ").unwrap().ribbon);
    }

    #[test]
    fn diagnostics() {
        assert_eq!(code("2b(8/3)"), "E002");
        assert_eq!(code("2b(9/3)"), "E003");
        assert_eq!(code("2b(9/11)"), "E004");
        assert_eq!(code("seifert([[1,2,3],[4,5,6]])"), "E005");
        assert_eq!(code("seifert([[1],[2,3]])"), "E005");
        assert_eq!(code("seifert([[1,2],[0,1]])"), "E006");
        assert_eq!(code("2b(9/4"), "E001");
        assert_eq!(code("2b(9/4) #"), "E001");
        assert_eq!(code("trefoil"), "E001");
        assert_eq!(code("2b(9/4)^0"), "E001");
        assert_eq!(code(""), "E001");
        let e = parse_knot("2b(9/4) + 2b(3/1)").unwrap_err();
        assert_eq!(e.position, 8);
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "unknot",
            "unknot ribbon",
            "2b(9/4)^2 # seifert([[-1,1],[0,-1]]) ribbon",
            "seifert([[0,1],[0,0]])",
        ] {
            let k = parse_knot(text).unwrap();
            assert_eq!(parse_knot(&k.to_string()).unwrap(), k, "{text}");
        }
    }
}
