//! Tokens with 1-based line/column positions. Newlines separate statements
//! except inside parentheses or brackets.

use crate::ast::Pos;
use crate::error::ScriptError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    /// `;` or a newline at nesting depth zero.
    End,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ScriptError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            if depth == 0 {
                out.push(Token { tok: Tok::End, pos });
            }
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let v = s.parse().map_err(|_| ScriptError::syntax(pos, format!("integer {s} is too large")))?;
            out.push(Token { tok: Tok::Int(v), pos });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), pos });
            continue;
        }
        chars.next();
        col += 1;
        match c {
            ';' => out.push(Token { tok: Tok::End, pos }),
            '(' | '[' => {
                depth += 1;
                out.push(Token { tok: Tok::Sym(c), pos });
            }
            ')' | ']' => {
                depth = (depth - 1).max(0);
                out.push(Token { tok: Tok::Sym(c), pos });
            }
            '=' | ',' | '*' | '+' | '-' | '/' | '^' => out.push(Token { tok: Tok::Sym(c), pos }),
            _ => return Err(ScriptError::syntax(pos, format!("unexpected character {c:?}"))),
        }
    }
    out.push(Token { tok: Tok::End, pos: Pos { line, col } });
    Ok(out)
}
