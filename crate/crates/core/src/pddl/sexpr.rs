//! Minimal s-expression reader for PDDL text.
//!
//! Symbols are lower-cased on the way in. Every node remembers the line it
//! started on so that later stages can report precise errors.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Symbol { text: String, line: usize },
    List { items: Vec<SExpr>, line: usize },
}

impl SExpr {
    pub fn line(&self) -> usize {
        match self {
            SExpr::Symbol { line, .. } | SExpr::List { line, .. } => *line,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            SExpr::Symbol { text, .. } => Some(text),
            SExpr::List { .. } => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List { items, .. } => Some(items),
            SExpr::Symbol { .. } => None,
        }
    }

    /// Head symbol of a list, e.g. `and` for `(and ...)`.
    pub fn head(&self) -> Option<&str> {
        self.as_list()
            .and_then(|items| items.first())
            .and_then(SExpr::as_symbol)
    }

    /// Short rendering used in error messages.
    pub fn describe(&self) -> String {
        match self {
            SExpr::Symbol { text, .. } => text.clone(),
            SExpr::List { items, .. } => match items.first() {
                Some(SExpr::Symbol { text, .. }) => format!("({text} ...)"),
                Some(_) => "((...) ...)".to_string(),
                None => "()".to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open(usize),
    Close(usize),
    Symbol(String, usize),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let code = match raw_line.find(';') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let mut current = String::new();
        for ch in code.chars() {
            match ch {
                '(' | ')' => {
                    if !current.is_empty() {
                        tokens.push(Token::Symbol(std::mem::take(&mut current), line));
                    }
                    tokens.push(if ch == '(' {
                        Token::Open(line)
                    } else {
                        Token::Close(line)
                    });
                }
                c if c.is_whitespace() => {
                    if !current.is_empty() {
                        tokens.push(Token::Symbol(std::mem::take(&mut current), line));
                    }
                }
                c => current.extend(c.to_lowercase()),
            }
        }
        if !current.is_empty() {
            tokens.push(Token::Symbol(current, line));
        }
    }
    tokens
}

/// Parses every top-level expression in `text`.
pub fn parse_all(text: &str) -> Result<Vec<SExpr>, ParseError> {
    let tokens = tokenize(text);
    let mut stack: Vec<(usize, Vec<SExpr>)> = Vec::new();
    let mut top = Vec::new();
    for token in tokens {
        match token {
            Token::Open(line) => stack.push((line, Vec::new())),
            Token::Close(line) => {
                let (start, items) = stack.pop().ok_or_else(|| ParseError::Syntax {
                    line,
                    message: "unexpected `)`".to_string(),
                })?;
                let node = SExpr::List { items, line: start };
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => top.push(node),
                }
            }
            Token::Symbol(text, line) => match stack.last_mut() {
                Some((_, parent)) => parent.push(SExpr::Symbol { text, line }),
                None => top.push(SExpr::Symbol { text, line }),
            },
        }
    }
    if let Some((line, _)) = stack.last() {
        return Err(ParseError::Syntax {
            line: *line,
            message: "unbalanced `(`: missing closing parenthesis".to_string(),
        });
    }
    Ok(top)
}

/// Parses exactly one top-level list.
pub fn parse_single(text: &str) -> Result<SExpr, ParseError> {
    let mut all = parse_all(text)?;
    match all.len() {
        0 => Err(ParseError::Syntax {
            line: 1,
            message: "empty input".to_string(),
        }),
        1 => {
            let expr = all.pop().expect("length checked");
            if expr.as_list().is_none() {
                return Err(ParseError::Syntax {
                    line: expr.line(),
                    message: format!("expected `(define ...)`, found `{}`", expr.describe()),
                });
            }
            Ok(expr)
        }
        _ => Err(ParseError::Syntax {
            line: all[1].line(),
            message: format!("trailing content `{}` after definition", all[1].describe()),
        }),
    }
}
