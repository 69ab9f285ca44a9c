//! Field-path aware access to JSON configuration objects.
//!
//! Errors carry the dotted path of the offending key (`materials.paint.n`),
//! and unknown keys are rejected so typos do not silently fall back to defaults.

use serde_json::{Map, Value};

use crate::units;
use crate::{Error, Result};

/// Parses a configuration document. Empty or whitespace-only text is an empty object.
pub fn parse_document(text: &str) -> Result<Value> {
    if text.trim().is_empty() {
        return Ok(Value::Object(Map::new()));
    }
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// A view on one JSON object together with its path from the document root.
#[derive(Debug, Clone)]
pub struct Section<'a> {
    path: String,
    map: Option<&'a Map<String, Value>>,
}

impl<'a> Section<'a> {
    /// Wraps `value` as the object at `path`. `None` behaves like an empty object.
    pub fn new(path: impl Into<String>, value: Option<&'a Value>) -> Result<Self> {
        let path = path.into();
        match value {
            None | Some(Value::Null) => Ok(Section { path, map: None }),
            Some(Value::Object(map)) => Ok(Section {
                path,
                map: Some(map),
            }),
            Some(_) => Err(Error::validation(
                display_path(&path),
                "must be a JSON object",
            )),
        }
    }

    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn key_path(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{}", self.path, key)
        }
    }

    pub fn get(&self, key: &str) -> Option<&'a Value> {
        self.map.and_then(|m| m.get(key)).filter(|v| !v.is_null())
    }

    pub fn is_present(&self) -> bool {
        self.map.is_some()
    }

    /// Rejects keys outside `allowed`.
    pub fn deny_unknown(&self, allowed: &[&str]) -> Result<()> {
        if let Some(map) = self.map {
            if let Some(key) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(Error::validation(self.key_path(key), "is not a recognized key"));
            }
        }
        Ok(())
    }

    pub fn child(&self, key: &str) -> Result<Section<'a>> {
        Section::new(self.key_path(key), self.get(key))
    }

    pub fn number(&self, key: &str) -> Result<Option<f64>> {
        self.quantity(key, |t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("cannot read a number from {t:?}")))
        })
    }

    pub fn length(&self, key: &str) -> Result<Option<f64>> {
        self.quantity(key, units::parse_length)
    }

    pub fn frequency(&self, key: &str) -> Result<Option<f64>> {
        self.quantity(key, units::parse_frequency)
    }

    pub fn angle_deg(&self, key: &str) -> Result<Option<f64>> {
        self.quantity(key, units::parse_angle_deg)
    }

    pub fn absorption(&self, key: &str) -> Result<Option<f64>> {
        self.quantity(key, units::parse_absorption)
    }

    pub fn string(&self, key: &str) -> Result<Option<&'a str>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(_) => Err(Error::validation(self.key_path(key), "must be a string")),
        }
    }

    pub fn required<T>(&self, key: &str, value: Option<T>) -> Result<T> {
        value.ok_or_else(|| Error::validation(self.key_path(key), "is required"))
    }

    fn quantity(&self, key: &str, parse: impl Fn(&str) -> Result<f64>) -> Result<Option<f64>> {
        let field = || self.key_path(key);
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_f64()
                .filter(|v| v.is_finite())
                .map(Some)
                .ok_or_else(|| Error::validation(field(), "must be a finite number")),
            Some(Value::String(s)) => parse(s).map(Some).map_err(|e| match e {
                Error::Parse(msg) => Error::validation(field(), msg),
                other => other,
            }),
            Some(_) => Err(Error::validation(
                field(),
                "must be a number or a unit-suffixed string",
            )),
        }
    }
}

fn display_path(path: &str) -> &str {
    if path.is_empty() {
        "<root>"
    } else {
        path
    }
}
