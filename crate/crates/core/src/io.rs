//! On-disk JSON formats for images and maps, with a canonical writer:
//! points sorted lexicographically, edges and pairs in ascending index
//! order, so that generate -> load -> re-serialize is byte-identical.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{Adjacency, DigitalImage, Point};
use crate::map::DigitalMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdjacencyFile {
    #[serde(rename = "cu")]
    Cu(usize),
    /// Edges index into the document's `points` array.
    #[serde(rename = "edges")]
    Edges(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageFile {
    pub dim: usize,
    pub points: Vec<Point>,
    pub adjacency: AdjacencyFile,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<Option<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boundary: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageRef {
    Path(String),
    Inline(ImageFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: ImageRef,
    pub target: ImageRef,
    /// One `[sourceIndex, targetIndex]` entry per source point.
    pub pairs: Vec<(usize, usize)>,
}

pub fn image_to_file(image: &DigitalImage) -> ImageFile {
    let labels = if image.labels().iter().any(|l| l.is_some()) {
        Some(image.labels().to_vec())
    } else {
        None
    };
    let boundary = if image.boundary().is_empty() {
        None
    } else {
        Some(image.boundary().iter().copied().collect())
    };
    ImageFile {
        dim: image.dim(),
        points: image.points().to_vec(),
        adjacency: match image.adjacency() {
            Adjacency::Cu(u) => AdjacencyFile::Cu(*u),
            Adjacency::Explicit(edges) => AdjacencyFile::Edges(edges.clone()),
        },
        labels,
        boundary,
    }
}

pub fn image_from_file(file: &ImageFile) -> Result<DigitalImage> {
    let points = file.points.clone();
    let fetch = |i: usize| -> Result<Point> {
        points
            .get(i)
            .cloned()
            .ok_or_else(|| Error::Format(format!("point index {i} out of range")))
    };
    let image = match &file.adjacency {
        AdjacencyFile::Cu(u) => DigitalImage::with_cu(file.dim, points.clone(), *u)?,
        AdjacencyFile::Edges(edges) => {
            let mut edge_points = Vec::with_capacity(edges.len());
            for &(i, j) in edges {
                edge_points.push((fetch(i)?, fetch(j)?));
            }
            DigitalImage::with_explicit(file.dim, points.clone(), edge_points)?
        }
    };
    let image = match &file.labels {
        Some(labels) => {
            if labels.len() != points.len() {
                return Err(Error::Format(format!(
                    "{} labels for {} points",
                    labels.len(),
                    points.len()
                )));
            }
            let pairs: Vec<(Point, String)> = labels
                .iter()
                .enumerate()
                .filter_map(|(i, l)| l.clone().map(|l| (points[i].clone(), l)))
                .collect();
            image.with_labels(&pairs)?
        }
        None => image,
    };
    match &file.boundary {
        Some(tags) => {
            let pts: Vec<Point> = tags.iter().map(|&i| fetch(i)).collect::<Result<_>>()?;
            Ok(image.with_boundary(&pts)?)
        }
        None => Ok(image),
    }
}

pub fn map_to_file(map: &DigitalMap) -> MapFile {
    MapFile {
        source: ImageRef::Inline(image_to_file(map.source())),
        target: ImageRef::Inline(image_to_file(map.target())),
        pairs: map.assignment().iter().copied().enumerate().collect(),
    }
}

fn resolve_image(r: &ImageRef, base_dir: &Path) -> Result<(DigitalImage, Vec<Point>)> {
    match r {
        ImageRef::Inline(file) => Ok((image_from_file(file)?, file.points.clone())),
        ImageRef::Path(p) => {
            let text = fs::read_to_string(base_dir.join(p))
                .map_err(|e| Error::Io(format!("{p}: {e}")))?;
            let file: ImageFile =
                serde_json::from_str(&text).map_err(|e| Error::Format(format!("{p}: {e}")))?;
            Ok((image_from_file(&file)?, file.points.clone()))
        }
    }
}

/// Loads a map document; image references are resolved relative to
/// `base_dir`. Pair indices refer to the documents' point arrays and are
/// re-anchored to canonical order here.
pub fn map_from_file(file: &MapFile, base_dir: &Path) -> Result<DigitalMap> {
    let (source, src_points) = resolve_image(&file.source, base_dir)?;
    let (target, tgt_points) = resolve_image(&file.target, base_dir)?;
    let mut pairs = Vec::with_capacity(file.pairs.len());
    for &(i, j) in &file.pairs {
        let x = src_points
            .get(i)
            .cloned()
            .ok_or_else(|| Error::Format(format!("source index {i} out of range")))?;
        let y = tgt_points
            .get(j)
            .cloned()
            .ok_or_else(|| Error::Format(format!("target index {j} out of range")))?;
        pairs.push((x, y));
    }
    DigitalMap::new(source, target, &pairs)
}

/// Canonical pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

pub fn save_image(path: &Path, image: &DigitalImage) -> Result<()> {
    fs::write(path, to_canonical_json(&image_to_file(image)))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_image(path: &Path) -> Result<DigitalImage> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file: ImageFile = serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    image_from_file(&file)
}

pub fn save_map(path: &Path, map: &DigitalMap) -> Result<()> {
    fs::write(path, to_canonical_json(&map_to_file(map)))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_map(path: &Path) -> Result<DigitalMap> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file: MapFile = serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    map_from_file(&file, base)
}
