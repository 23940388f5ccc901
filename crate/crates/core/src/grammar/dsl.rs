//! Grammar text format.
//!
//! ```text
//! rules := rule (";" rule)* ";"?
//! rule  := symbol ("->" | "|->") polynomial
//! ```
//!
//! `#` starts a comment running to end of line.

use crate::error::{Error, Result};
use crate::poly::{syntax, tokenize, Parser, Symbol, Tok};

use super::Grammar;

pub fn parse_grammar(text: &str) -> Result<Grammar> {
    let mut p = Parser::new(tokenize(text)?);
    let mut rules = Vec::new();
    loop {
        if p.peek().tok == Tok::Eof {
            break;
        }
        let head = p.next();
        let Tok::Ident(name) = &head.tok else {
            return Err(syntax(
                head.line,
                head.column,
                "expected a symbol to start a rule",
            ));
        };
        let sym = Symbol::new(name);
        p.expect(Tok::Arrow, "`->`")?;
        let rhs = p.polynomial()?;
        if rules.iter().any(|(s, _)| *s == sym) {
            return Err(Error::DuplicateRule(sym.to_string()));
        }
        rules.push((sym, rhs));
        match p.peek().tok {
            Tok::Semi => {
                p.next();
            }
            Tok::Eof => break,
            _ => return Err(p.error_here("`;` or end of input")),
        }
    }
    if rules.is_empty() {
        let t = p.peek();
        return Err(syntax(
            t.line,
            t.column,
            "a grammar needs at least one rule",
        ));
    }
    Grammar::new("inline", rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, sym};

    #[test]
    fn dumont_grammar() {
        let g = parse_grammar("x -> x*y; y -> x*y").unwrap();
        assert_eq!(g.rules().len(), 2);
        assert_eq!(g.rule(sym("y")), Some(&parse_poly("x*y").unwrap()));
    }

    #[test]
    fn laurent_rule() {
        let g = parse_grammar("z -> x^2*y^2*z^-3").unwrap();
        assert_eq!(g.rule(sym("z")).unwrap().to_string(), "x^2*y^2*z^-3");
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_grammar("x -> "),
            Err(Error::Syntax {
                line: 1,
                column: 6,
                ..
            })
        ));
        assert!(matches!(parse_grammar("x y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_grammar(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_grammar("-> x"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_grammar("x -> y z -> y"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn duplicate_rule() {
        assert_eq!(
            parse_grammar("x -> y; x -> z"),
            Err(Error::DuplicateRule("x".into()))
        );
    }

    #[test]
    fn comments_newlines_and_synonym_arrow() {
        let text = "# type B runs\nx |-> x*y^2;   # first\ny -> y*z^2;\nz -> y^4*z^-1;\n";
        let g = parse_grammar(text).unwrap();
        assert_eq!(g.rules().len(), 3);
        // canonical printing round-trips
        assert_eq!(parse_grammar(&g.to_string()).unwrap(), g);
    }
}
