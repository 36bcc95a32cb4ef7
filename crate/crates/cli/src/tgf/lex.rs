use super::ParseError;

/// Characters that always form a token of their own.
pub const PUNCT: [char; 5] = ['=', ':', ',', '[', ']'];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub col: usize,
    pub quoted: bool,
}

impl Token {
    pub fn is(&self, word: &str) -> bool {
        !self.quoted && self.text == word
    }
}

/// Splits one line into tokens; `#` starts a comment outside quotes.
pub fn lex_line(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if PUNCT.contains(&c) {
            out.push(Token { text: c.to_string(), col: i + 1, quoted: false });
            i += 1;
        } else if c == '"' {
            let start = i;
            let mut text = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => {
                        return Err(ParseError { line: lineno, col: start + 1, message: "unterminated quote".into() })
                    }
                    Some('"') => break,
                    Some('\\') => {
                        match chars.get(i + 1) {
                            Some(e @ ('"' | '\\')) => text.push(*e),
                            _ => {
                                return Err(ParseError {
                                    line: lineno,
                                    col: i + 1,
                                    message: "unknown escape in quoted name".into(),
                                })
                            }
                        }
                        i += 2;
                        continue;
                    }
                    Some(ch) => text.push(*ch),
                }
                i += 1;
            }
            out.push(Token { text, col: start + 1, quoted: true });
            i += 1;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !PUNCT.contains(&chars[i]) && !"#\"".contains(chars[i])
            {
                i += 1;
            }
            out.push(Token { text: chars[start..i].iter().collect(), col: start + 1, quoted: false });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctuation_splits_words() {
        let t = lex_line("[map s : Ed -> V] # note", 1).unwrap();
        let words: Vec<&str> = t.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(words, ["[", "map", "s", ":", "Ed", "->", "V", "]"]);
        assert_eq!(t[4].col, 10);
    }

    #[test]
    fn quoted_names_keep_spaces_and_escapes() {
        let t = lex_line(r#"node "a b\"c" x"#, 3).unwrap();
        assert_eq!(t[1].text, "a b\"c");
        assert!(t[1].quoted);
        assert_eq!(t[2].col, 15);
        assert_eq!(lex_line("node \"abc", 2).unwrap_err().col, 6);
    }
}
