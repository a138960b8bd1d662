//! Line tokenizer shared by the text formats: `#` starts a comment, fields
//! are whitespace separated, blank lines are skipped.

use std::str::FromStr;

use crate::error::ParseError;

pub(crate) struct Line<'a> {
    pub no: usize,
    pub fields: Vec<&'a str>,
}

impl Line<'_> {
    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Line {
            line: self.no,
            msg: msg.into(),
        }
    }

    pub fn keyword(&self) -> &str {
        self.fields[0]
    }

    /// Parses field `i`.
    pub fn get<T: FromStr>(&self, i: usize) -> Result<T, ParseError> {
        let s = self
            .fields
            .get(i)
            .ok_or_else(|| self.err(format!("missing field {i} after `{}`", self.keyword())))?;
        s.parse()
            .map_err(|_| self.err(format!("cannot parse `{s}`")))
    }

    /// Parses every field from `i` on.
    pub fn rest<T: FromStr>(&self, i: usize) -> Result<Vec<T>, ParseError> {
        (i..self.fields.len()).map(|j| self.get(j)).collect()
    }

    pub fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        if self.fields.len() != n {
            return Err(self.err(format!(
                "`{}` expects {} fields, found {}",
                self.keyword(),
                n - 1,
                self.fields.len() - 1
            )));
        }
        Ok(())
    }
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        (!fields.is_empty()).then_some(Line { no: i + 1, fields })
    })
}

/// Attaches a line number to a structural error.
pub(crate) fn at(line: &Line<'_>, e: crate::error::Error) -> crate::error::Error {
    match e {
        crate::error::Error::Invalid(msg) => line.err(msg).into(),
        other => other,
    }
}
