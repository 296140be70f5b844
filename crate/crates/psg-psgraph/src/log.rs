//! Evaluation log events and their JSON-lines export.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum Tag {
    ENV_DATA,
    GOAL,
    GOALTYPE,
    EVAL,
    SUCCESS,
    FAILURE,
}

impl Tag {
    pub const ALL: [Tag; 6] = [Tag::ENV_DATA, Tag::GOAL, Tag::GOALTYPE, Tag::EVAL, Tag::SUCCESS, Tag::FAILURE];

    pub fn name(self) -> &'static str {
        match self {
            Tag::ENV_DATA => "ENV_DATA",
            Tag::GOAL => "GOAL",
            Tag::GOALTYPE => "GOALTYPE",
            Tag::EVAL => "EVAL",
            Tag::SUCCESS => "SUCCESS",
            Tag::FAILURE => "FAILURE",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Tag, String> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown log tag `{s}`"))
    }
}

/// Comma-separated tag list; empty means every tag.
pub fn parse_tags(s: &str) -> Result<Vec<Tag>, String> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEvent {
    pub step: usize,
    pub tag: Tag,
    pub text: String,
}

impl fmt::Display for LogEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.text.is_empty() {
            write!(f, "> {}", self.tag)
        } else {
            write!(f, "> {} : {}", self.tag, self.text)
        }
    }
}

/// Events whose tag is in `tags`; an empty filter keeps everything.
pub fn filter<'a>(events: &'a [LogEvent], tags: &[Tag]) -> Vec<&'a LogEvent> {
    events.iter().filter(|e| tags.is_empty() || tags.contains(&e.tag)).collect()
}

pub fn to_jsonl<'a>(events: impl IntoIterator<Item = &'a LogEvent>) -> String {
    let mut s = String::new();
    for e in events {
        s.push_str(&serde_json::to_string(e).expect("event serialises"));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_and_jsonl() {
        assert_eq!(parse_tags("goaltype, EVAL").unwrap(), vec![Tag::GOALTYPE, Tag::EVAL]);
        assert!(parse_tags("").unwrap().is_empty());
        assert!(parse_tags("nope").is_err());
        let ev = vec![
            LogEvent { step: 1, tag: Tag::GOALTYPE, text: "evaluating any".into() },
            LogEvent { step: 1, tag: Tag::SUCCESS, text: String::new() },
        ];
        assert_eq!(filter(&ev, &[]).len(), 2);
        assert_eq!(filter(&ev, &[Tag::SUCCESS]).len(), 1);
        assert_eq!(
            to_jsonl(&ev),
            "{\"step\":1,\"tag\":\"GOALTYPE\",\"text\":\"evaluating any\"}\n{\"step\":1,\"tag\":\"SUCCESS\",\"text\":\"\"}\n"
        );
        assert_eq!(ev[1].to_string(), "> SUCCESS");
    }
}
