//! JSON file formats for spaces, covers and maps.
//!
//! A space is `{"points": [..], "closure": {point: [point, ..], ..}}` where
//! every closure list contains its own point. A cover is
//! `{"parts": [[point, ..], ..]}` and a map is `{"assignment": {point: point}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cover::Cover;
use super::map::SpaceMap;
use super::pointset::PointSet;
use super::space::FiniteClosureSpace;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub closure: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub parts: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub assignment: BTreeMap<String, String>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("malformed JSON: {e}")))
}

impl SpaceFile {
    pub fn from_space(space: &FiniteClosureSpace) -> Self {
        let closure = (0..space.len())
            .map(|p| {
                (
                    space.label(p).to_string(),
                    space.subset_labels(space.singleton_closure(p)),
                )
            })
            .collect();
        SpaceFile {
            points: space.labels().to_vec(),
            closure,
        }
    }

    pub fn into_space(self) -> Result<FiniteClosureSpace> {
        let index: BTreeMap<&str, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        if index.len() != self.points.len() {
            return Err(Error::input("duplicate point in `points`"));
        }
        if let Some(extra) = self
            .closure
            .keys()
            .find(|k| !index.contains_key(k.as_str()))
        {
            return Err(Error::UnknownPoint(extra.clone()));
        }
        let mut closure = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let list = self
                .closure
                .get(p)
                .ok_or_else(|| Error::input(format!("no closure given for `{p}`")))?;
            let mut set = PointSet::EMPTY;
            for q in list {
                let &i = index
                    .get(q.as_str())
                    .ok_or_else(|| Error::UnknownPoint(q.clone()))?;
                set.insert(i);
            }
            closure.push(set);
        }
        FiniteClosureSpace::new(self.points, closure)
    }
}

pub fn read_space(text: &str) -> Result<FiniteClosureSpace> {
    parse::<SpaceFile>(text)?.into_space()
}

pub fn write_space(space: &FiniteClosureSpace) -> String {
    serde_json::to_string_pretty(&SpaceFile::from_space(space)).expect("serializable")
}

pub fn read_cover(space: Arc<FiniteClosureSpace>, text: &str) -> Result<Cover> {
    let file: CoverFile = parse(text)?;
    let parts = file
        .parts
        .iter()
        .map(|part| space.subset(part))
        .collect::<Result<Vec<_>>>()?;
    Cover::new(space, parts)
}

pub fn write_cover(cover: &Cover) -> String {
    let file = CoverFile {
        parts: cover
            .parts()
            .iter()
            .map(|&p| cover.space().subset_labels(p))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn read_map(
    source: Arc<FiniteClosureSpace>,
    target: Arc<FiniteClosureSpace>,
    text: &str,
) -> Result<SpaceMap> {
    let file: MapFile = parse(text)?;
    let mut assignment = vec![usize::MAX; source.len()];
    for (x, y) in &file.assignment {
        let xi = source
            .index_of(x)
            .ok_or_else(|| Error::UnknownPoint(x.clone()))?;
        assignment[xi] = target
            .index_of(y)
            .ok_or_else(|| Error::UnknownPoint(y.clone()))?;
    }
    if let Some(p) = assignment.iter().position(|&y| y == usize::MAX) {
        return Err(Error::input(format!(
            "no image given for `{}`",
            source.label(p)
        )));
    }
    SpaceMap::new(source, target, assignment)
}

pub fn write_map(map: &SpaceMap) -> String {
    let file = MapFile {
        assignment: (0..map.source().len())
            .map(|x| {
                (
                    map.source().label(x).to_string(),
                    map.target().label(map.apply(x)).to_string(),
                )
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
