use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    /// Bare run of name characters: letters, digits, `_`, `-`, `/`.
    Word(String),
    /// Double-quoted name; may hold any character.
    Quoted(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Bang,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '/')
}

pub(crate) fn tokenize(source: &str, file: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = source.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    let span = |line, column, length| SourceSpan {
        file: file.to_owned(),
        line,
        column,
        length,
    };

    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                column += 1;
            }
            continue;
        }
        let single = match c {
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            '!' => Some(TokenKind::Bang),
            _ => None,
        };
        if let Some(kind) = single {
            chars.next();
            column += 1;
            tokens.push(Token {
                kind,
                span: span(start_line, start_col, 1),
            });
            continue;
        }
        if is_word_char(c) {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if !is_word_char(c) {
                    break;
                }
                word.push(c);
                chars.next();
                column += 1;
            }
            let len = word.chars().count();
            tokens.push(Token {
                kind: TokenKind::Word(word),
                span: span(start_line, start_col, len),
            });
            continue;
        }
        if c == '"' {
            chars.next();
            column += 1;
            let mut text = String::new();
            let mut consumed = 1usize;
            loop {
                let Some(c) = chars.next() else {
                    return Err(ParseError::Syntax {
                        span: span(start_line, start_col, consumed),
                        message: "unterminated quoted name".into(),
                    });
                };
                consumed += 1;
                if c == '\n' {
                    line += 1;
                    column = 1;
                } else {
                    column += 1;
                }
                match c {
                    '"' => break,
                    '\\' => match chars.next() {
                        Some(esc) => {
                            consumed += 1;
                            if esc == '\n' {
                                line += 1;
                                column = 1;
                            } else {
                                column += 1;
                            }
                            text.push(esc);
                        }
                        None => {
                            return Err(ParseError::Syntax {
                                span: span(start_line, start_col, consumed),
                                message: "unterminated quoted name".into(),
                            })
                        }
                    },
                    other => text.push(other),
                }
            }
            tokens.push(Token {
                kind: TokenKind::Quoted(text),
                span: span(start_line, start_col, consumed),
            });
            continue;
        }
        return Err(ParseError::Syntax {
            span: span(start_line, start_col, 1),
            message: format!("unexpected character {c:?}"),
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: span(line, column, 0),
    });
    Ok(tokens)
}
