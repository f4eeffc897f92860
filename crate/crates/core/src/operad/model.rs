use std::collections::HashMap;
use std::fmt;

use super::affine::{parse_q, AffineMap, AffineOp, Shape};
use super::spec::{CubeSpec, Degree1Spec, OperadSpec, RelationsSpec};
use crate::braid::{BraidWord, Permutation, Strands};
use crate::color::{Color, ColorWord, Flavor};
use crate::error::{Error, Result};

/// A degree-1 element decorating an edge.
///
/// `Id` is the only representation of an identity, so equality of labels is
/// equality of groupoid elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Id,
    Twist(i64),
    Elem(u32),
}

impl Label {
    pub fn is_id(&self) -> bool {
        matches!(self, Label::Id)
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub inputs: ColorWord,
    pub output: Color,
    /// Piece embeddings for geometric operads.
    pub maps: Option<Vec<AffineMap>>,
}

impl Generator {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

#[derive(Clone, Debug)]
pub struct Groupoid {
    pub names: Vec<String>,
    pub from: Vec<Color>,
    pub to: Vec<Color>,
    pub identity: Vec<u32>,
    product: HashMap<(u32, u32), u32>,
    inverse: Vec<u32>,
}

impl Groupoid {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Clone, Debug)]
pub enum Degree1 {
    Trivial,
    Twist,
    Table(Groupoid),
    /// Symmetry group of each color's shape, identity first.
    Affine(Vec<Vec<AffineMap>>),
}

/// Right-hand side of `g * γ = prefix · ((labels) * result)`.
#[derive(Clone, Debug)]
pub struct Rewrite {
    pub prefix: Strands,
    pub labels: Vec<Label>,
    pub result: u32,
}

#[derive(Clone, Debug)]
pub struct Geometry {
    pub dimension: usize,
    pub shapes: Vec<Shape>,
    pub cube: Option<CubeSpec>,
}

/// A validated operad presentation ready for computation.
#[derive(Clone, Debug)]
pub struct Operad {
    spec: OperadSpec,
    flavor: Flavor,
    colors: Vec<String>,
    gens: Vec<Generator>,
    degree1: Degree1,
    rewrites: HashMap<(u32, Label), Rewrite>,
    rewritable: Vec<bool>,
    ribbon: bool,
    geometry: Option<Geometry>,
}

impl Operad {
    pub fn from_spec(spec: OperadSpec) -> Result<Self> {
        Builder::new(spec)?.build()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_spec(OperadSpec::from_json(s)?)
    }

    pub fn spec(&self) -> &OperadSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        self.spec.name.as_deref().unwrap_or("operad")
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, name: &str) -> Result<Color> {
        self.colors
            .iter()
            .position(|c| c == name)
            .map(|i| Color(i as u16))
            .ok_or_else(|| Error::invalid(format!("unknown color `{name}`")))
    }

    pub fn color_name(&self, c: Color) -> &str {
        &self.colors[c.0 as usize]
    }

    pub fn word(&self, names: &[&str]) -> Result<ColorWord> {
        names.iter().map(|n| self.color(n)).collect()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: u32) -> &Generator {
        &self.gens[g as usize]
    }

    pub fn generator_id(&self, name: &str) -> Result<u32> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::invalid(format!("unknown generator `{name}`")))
    }

    pub fn degree1(&self) -> &Degree1 {
        &self.degree1
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    pub fn is_geometric(&self) -> bool {
        self.geometry.is_some()
    }

    pub fn is_ribbon(&self) -> bool {
        self.ribbon
    }

    pub fn is_rewritable(&self, g: u32) -> bool {
        self.rewritable[g as usize]
    }

    pub fn has_rewrites(&self) -> bool {
        self.rewritable.iter().any(|&r| r)
    }

    /// Identity of the symmetric or braid group on `n` strands.
    pub fn strands_identity(&self, n: usize) -> Strands {
        Strands::identity(self.flavor, n)
    }

    pub fn rewrite(&self, g: u32, label: Label) -> Result<Rewrite> {
        if self.ribbon {
            if let Label::Twist(k) = label {
                let letters = vec![k.signum() as i32; k.unsigned_abs() as usize];
                return Ok(Rewrite {
                    prefix: Strands::from_word(&BraidWord::new_unchecked(2, letters)),
                    labels: vec![label, label],
                    result: g,
                });
            }
        }
        self.rewrites.get(&(g, label)).cloned().ok_or_else(|| Error::MissingRewrite {
            generator: self.generator(g).name.clone(),
            label: self.label_name(label),
        })
    }

    pub fn label_name(&self, l: Label) -> String {
        match (l, &self.degree1) {
            (Label::Id, _) => "id".into(),
            (Label::Twist(k), _) => format!("t{k}"),
            (Label::Elem(e), Degree1::Table(t)) => t.names[e as usize].clone(),
            (Label::Elem(e), _) => format!("#{e}"),
        }
    }

    pub fn parse_label(&self, s: &str) -> Result<Label> {
        let s = s.trim();
        if s == "id" || s == "e" && !matches!(self.degree1, Degree1::Table(_)) {
            return Ok(Label::Id);
        }
        match &self.degree1 {
            Degree1::Twist => {
                let k: i64 = s
                    .strip_prefix('t')
                    .and_then(|k| if k.is_empty() { Some(1) } else { k.parse().ok() })
                    .ok_or_else(|| Error::Parse(format!("bad twist label `{s}`")))?;
                Ok(if k == 0 { Label::Id } else { Label::Twist(k) })
            }
            Degree1::Table(t) => {
                let e = t
                    .names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| Error::Parse(format!("unknown degree-1 element `{s}`")))?;
                Ok(self.tidy_label(Label::Elem(e as u32)))
            }
            _ => Err(Error::Parse(format!("no degree-1 element `{s}` in this operad"))),
        }
    }

    fn tidy_label(&self, l: Label) -> Label {
        match (l, &self.degree1) {
            (Label::Twist(0), _) => Label::Id,
            (Label::Elem(e), Degree1::Table(t)) if t.identity.contains(&e) => Label::Id,
            _ => l,
        }
    }

    /// Source color of a label placed on an edge whose other end has
    /// color `ctx` (used for color-preserving labels).
    pub fn label_from(&self, l: Label, ctx: Color) -> Color {
        match (l, &self.degree1) {
            (Label::Elem(e), Degree1::Table(t)) => t.from[e as usize],
            _ => ctx,
        }
    }

    pub fn label_to(&self, l: Label, ctx: Color) -> Color {
        match (l, &self.degree1) {
            (Label::Elem(e), Degree1::Table(t)) => t.to[e as usize],
            _ => ctx,
        }
    }

    /// `a` followed by `b`.
    pub fn label_then(&self, a: Label, b: Label) -> Result<Label> {
        match (a, b) {
            (Label::Id, x) | (x, Label::Id) => Ok(x),
            (Label::Twist(x), Label::Twist(y)) => Ok(self.tidy_label(Label::Twist(x + y))),
            (Label::Elem(x), Label::Elem(y)) => match &self.degree1 {
                Degree1::Table(t) => t
                    .product
                    .get(&(x, y))
                    .map(|&z| self.tidy_label(Label::Elem(z)))
                    .ok_or_else(|| {
                        Error::mismatch(format!("{} and {} are not composable", t.names[x as usize], t.names[y as usize]))
                    }),
                _ => Err(Error::mismatch("element labels without a table")),
            },
            _ => Err(Error::mismatch("mixed label kinds")),
        }
    }

    pub fn label_inverse(&self, l: Label) -> Label {
        match (l, &self.degree1) {
            (Label::Twist(k), _) => Label::Twist(-k),
            (Label::Elem(e), Degree1::Table(t)) => self.tidy_label(Label::Elem(t.inverse[e as usize])),
            _ => l,
        }
    }

    /// All non-identity degree-1 labels with source color `c`; twists are
    /// truncated to `radius`.
    pub fn labels_from(&self, c: Color, radius: i64) -> Vec<Label> {
        match &self.degree1 {
            Degree1::Twist => (-radius..=radius).filter(|&k| k != 0).map(Label::Twist).collect(),
            Degree1::Table(t) => (0..t.len() as u32)
                .filter(|&e| t.from[e as usize] == c && !t.identity.contains(&e))
                .map(Label::Elem)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Symmetries of the shape of color `c` (geometric operads), identity first.
    pub fn symmetries(&self, c: Color) -> Vec<AffineMap> {
        match &self.degree1 {
            Degree1::Affine(g) => g[c.0 as usize].clone(),
            _ => vec![AffineMap::identity(self.geometry.as_ref().map_or(1, |g| g.dimension))],
        }
    }

    pub fn generator_affine(&self, g: u32) -> AffineOp {
        let gen = self.generator(g);
        let maps = gen.maps.as_ref().expect("geometric generator");
        AffineOp::new(gen.output, gen.inputs.iter().copied().zip(maps.iter().cloned()).collect())
    }
}

impl fmt::Display for Operad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {} colors, {} generators)", self.name(), self.flavor, self.colors.len(), self.gens.len())
    }
}

struct Builder {
    spec: OperadSpec,
    colors: Vec<String>,
}

impl Builder {
    fn new(spec: OperadSpec) -> Result<Self> {
        if spec.colors.is_empty() {
            return Err(Error::invalid("an operad needs at least one color"));
        }
        let mut seen = std::collections::HashSet::new();
        for c in &spec.colors {
            if !seen.insert(c) {
                return Err(Error::invalid(format!("duplicate color `{c}`")));
            }
        }
        Ok(Self { colors: spec.colors.clone(), spec })
    }

    fn color(&self, name: &str) -> Result<Color> {
        self.colors
            .iter()
            .position(|c| c == name)
            .map(|i| Color(i as u16))
            .ok_or_else(|| Error::invalid(format!("unknown color `{name}`")))
    }

    fn build(self) -> Result<Operad> {
        let spec = &self.spec;
        let geometry = self.geometry()?;
        let mut gens = Vec::new();
        if let Some(Geometry { cube: Some(cube), .. }) = &geometry {
            if self.colors.len() != 1 {
                return Err(Error::invalid("cube operads have exactly one color"));
            }
            gens = cube_generators(cube)?;
        }
        for g in &spec.generators {
            if g.inputs.len() < 2 {
                return Err(Error::invalid(format!(
                    "generator `{}` has degree {}; generators need at least two inputs",
                    g.id,
                    g.inputs.len()
                )));
            }
            if gens.iter().any(|x: &Generator| x.name == g.id) {
                return Err(Error::invalid(format!("duplicate generator `{}`", g.id)));
            }
            let inputs = g.inputs.iter().map(|c| self.color(c)).collect::<Result<ColorWord>>()?;
            let maps = match (&g.maps, &geometry) {
                (Some(ms), Some(_)) => {
                    if ms.len() != inputs.len() {
                        return Err(Error::invalid(format!("generator `{}` needs one map per input", g.id)));
                    }
                    Some(ms.iter().map(AffineMap::from_spec).collect::<Result<Vec<_>>>()?)
                }
                (None, Some(_)) => {
                    return Err(Error::invalid(format!("geometric generator `{}` has no maps", g.id)));
                }
                (Some(_), None) => {
                    return Err(Error::invalid(format!("generator `{}` has maps but the operad has no shapes", g.id)));
                }
                (None, None) => None,
            };
            gens.push(Generator { name: g.id.clone(), inputs, output: self.color(&g.output)?, maps });
        }
        let degree1 = self.degree1(geometry.as_ref())?;
        if geometry.is_some() && !matches!(degree1, Degree1::Affine(_) | Degree1::Trivial) {
            return Err(Error::invalid("geometric operads take affine or trivial degree-1 data"));
        }
        if spec.flavor == Flavor::Braided && geometry.is_some() {
            return Err(Error::invalid("geometric operads are planar or symmetric"));
        }
        let ribbon = matches!(spec.relations, RelationsSpec::Ribbon);
        if ribbon {
            if spec.flavor != Flavor::Braided || !matches!(degree1, Degree1::Twist) {
                return Err(Error::invalid("the ribbon relation needs a braided operad with integer twists"));
            }
            if gens.iter().any(|g| g.arity() != 2) {
                return Err(Error::invalid("the ribbon relation is defined for binary generators"));
            }
        }
        let mut op = Operad {
            spec: self.spec.clone(),
            flavor: spec.flavor,
            colors: self.colors.clone(),
            rewritable: vec![ribbon; gens.len()],
            gens,
            degree1,
            rewrites: HashMap::new(),
            ribbon,
            geometry,
        };
        self.load_rewrites(&mut op)?;
        if let Some(geo) = &op.geometry {
            validate_geometry(&op, geo)?;
        }
        Ok(op)
    }

    fn geometry(&self) -> Result<Option<Geometry>> {
        match &self.spec.relations {
            RelationsSpec::Cube(c) => {
                if c.d == 0 || c.d > 3 {
                    return Err(Error::invalid("cube dimension must be 1, 2 or 3"));
                }
                if c.n.len() != c.d || c.n.iter().any(|ns| ns.is_empty() || ns.iter().any(|&n| n < 2)) {
                    return Err(Error::invalid("cube needs a nonempty set N_j of integers >= 2 per axis"));
                }
                Ok(Some(Geometry { dimension: c.d, shapes: vec![Shape::Cube(c.d)], cube: Some(c.clone()) }))
            }
            RelationsSpec::Affine(a) => {
                if a.dimension != 2 {
                    return Err(Error::Unsupported("polygonal shapes are two-dimensional".into()));
                }
                let mut shapes = Vec::new();
                for c in &self.colors {
                    let verts = a
                        .shapes
                        .get(c)
                        .ok_or_else(|| Error::invalid(format!("no shape for color `{c}`")))?;
                    let v = verts
                        .iter()
                        .map(|p| {
                            if p.len() != 2 {
                                return Err(Error::invalid("polygon vertices are points in the plane"));
                            }
                            p.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if v.len() < 3 {
                        return Err(Error::invalid(format!("shape `{c}` needs at least three vertices")));
                    }
                    shapes.push(Shape::Polygon(v));
                }
                Ok(Some(Geometry { dimension: 2, shapes, cube: None }))
            }
            _ => Ok(None),
        }
    }

    fn degree1(&self, geometry: Option<&Geometry>) -> Result<Degree1> {
        Ok(match &self.spec.degree1 {
            Degree1Spec::Trivial => Degree1::Trivial,
            Degree1Spec::IntegerTwist => Degree1::Twist,
            Degree1Spec::Groupoid(g) => {
                let names: Vec<String> = g.elements.iter().map(|e| e.id.clone()).collect();
                let idx = |s: &str| -> Result<u32> {
                    names
                        .iter()
                        .position(|n| n == s)
                        .map(|i| i as u32)
                        .ok_or_else(|| Error::invalid(format!("unknown degree-1 element `{s}`")))
                };
                let from = g.elements.iter().map(|e| self.color(&e.from)).collect::<Result<Vec<_>>>()?;
                let to = g.elements.iter().map(|e| self.color(&e.to)).collect::<Result<Vec<_>>>()?;
                let mut identity = Vec::new();
                for c in &self.colors {
                    let e = g
                        .identities
                        .get(c)
                        .ok_or_else(|| Error::invalid(format!("no identity for color `{c}`")))?;
                    let e = idx(e)?;
                    let col = self.color(c)?;
                    if from[e as usize] != col || to[e as usize] != col {
                        return Err(Error::invalid(format!("identity of `{c}` has the wrong colors")));
                    }
                    identity.push(e);
                }
                let mut product = HashMap::new();
                for [a, b, c] in &g.products {
                    let (a, b, c) = (idx(a)?, idx(b)?, idx(c)?);
                    if to[a as usize] != from[b as usize]
                        || from[c as usize] != from[a as usize]
                        || to[c as usize] != to[b as usize]
                    {
                        return Err(Error::invalid(format!(
                            "product {} {} = {} is not type correct",
                            names[a as usize], names[b as usize], names[c as usize]
                        )));
                    }
                    product.insert((a, b), c);
                }
                // products with identities are implied
                for e in 0..names.len() as u32 {
                    product.insert((identity[from[e as usize].0 as usize], e), e);
                    product.insert((e, identity[to[e as usize].0 as usize]), e);
                }
                for a in 0..names.len() as u32 {
                    for b in 0..names.len() as u32 {
                        if to[a as usize] == from[b as usize] && !product.contains_key(&(a, b)) {
                            return Err(Error::invalid(format!(
                                "product table misses {} {}",
                                names[a as usize], names[b as usize]
                            )));
                        }
                    }
                }
                let mut inverse = Vec::new();
                for a in 0..names.len() as u32 {
                    let want = identity[from[a as usize].0 as usize];
                    let inv = (0..names.len() as u32)
                        .find(|&b| product.get(&(a, b)) == Some(&want))
                        .ok_or_else(|| Error::invalid(format!("`{}` has no inverse", names[a as usize])))?;
                    if let Some(declared) = g.inverses.get(&names[a as usize]) {
                        if idx(declared)? != inv {
                            return Err(Error::invalid(format!("declared inverse of `{}` is wrong", names[a as usize])));
                        }
                    }
                    inverse.push(inv);
                }
                for a in 0..names.len() as u32 {
                    for b in 0..names.len() as u32 {
                        for c in 0..names.len() as u32 {
                            if let (Some(&ab), Some(&bc)) = (product.get(&(a, b)), product.get(&(b, c))) {
                                if product.get(&(ab, c)) != product.get(&(a, bc)) {
                                    return Err(Error::invalid("degree-1 product table is not associative"));
                                }
                            }
                        }
                    }
                }
                Degree1::Table(Groupoid { names, from, to, identity, product, inverse })
            }
            Degree1Spec::Affine(groups) => {
                let geo = geometry.ok_or_else(|| Error::invalid("affine degree-1 data needs shapes"))?;
                let mut all = Vec::new();
                for c in &self.colors {
                    let mut maps = vec![AffineMap::identity(geo.dimension)];
                    for m in groups.get(c).map(Vec::as_slice).unwrap_or(&[]) {
                        let m = AffineMap::from_spec(m)?;
                        if !maps.contains(&m) {
                            maps.push(m);
                        }
                    }
                    all.push(maps);
                }
                Degree1::Affine(all)
            }
        })
    }

    fn load_rewrites(&self, op: &mut Operad) -> Result<()> {
        for r in &self.spec.rewrites {
            if op.geometry.is_some() {
                return Err(Error::invalid("geometric operads compose by their maps and take no rewrites"));
            }
            let g = op.generator_id(&r.generator)?;
            let label = op.parse_label(&r.label)?;
            let result = op.generator_id(&r.result)?;
            let labels = r.labels.iter().map(|l| op.parse_label(l)).collect::<Result<Vec<_>>>()?;
            let gen = op.generator(g).clone();
            let res = op.generator(result).clone();
            let n = gen.arity();
            if res.arity() != n || labels.len() != n {
                return Err(Error::invalid(format!("rewrite for `{}` changes the degree", gen.name)));
            }
            let prefix = match op.flavor {
                Flavor::Braided => {
                    let letters = r.prefix.iter().map(|&x| x as i32).collect();
                    Strands::from_word(&BraidWord::new(n, letters)?)
                }
                Flavor::Symmetric => {
                    if r.prefix.is_empty() {
                        Strands::from_perm(Permutation::identity(n))
                    } else {
                        let imgs: Vec<usize> = r.prefix.iter().map(|&x| x as usize).collect();
                        Strands::from_perm(Permutation::from_one_based(&imgs)?)
                    }
                }
                Flavor::Planar => {
                    if !r.prefix.is_empty() {
                        return Err(Error::invalid("planar rewrites cannot permute inputs"));
                    }
                    Strands::from_perm(Permutation::identity(n))
                }
            };
            if prefix.size() != n {
                return Err(Error::invalid("rewrite prefix has the wrong size"));
            }
            if op.label_from(label, gen.output) != gen.output || op.label_to(label, gen.output) != res.output {
                return Err(Error::invalid(format!("rewrite for `{}` is not type correct at the output", gen.name)));
            }
            for (j, &l) in labels.iter().enumerate() {
                let src = gen.inputs[prefix.source(j)];
                if op.label_from(l, src) != src || op.label_to(l, src) != res.inputs[j] {
                    return Err(Error::invalid(format!("rewrite for `{}` is not type correct at input {j}", gen.name)));
                }
            }
            if label.is_id() {
                return Err(Error::invalid("rewrites are declared for non-identity labels"));
            }
            op.rewritable[g as usize] = true;
            op.rewrites.insert((g, label), Rewrite { prefix, labels, result });
        }
        // a generator mentioned in the table must be rewritable under every label
        for g in 0..op.gens.len() as u32 {
            if op.rewritable[g as usize] && !op.ribbon {
                let out = op.generator(g).output;
                for l in op.labels_from(out, 1) {
                    if !op.rewrites.contains_key(&(g, l)) {
                        return Err(Error::MissingRewrite {
                            generator: op.generator(g).name.clone(),
                            label: op.label_name(l),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn cube_generators(cube: &CubeSpec) -> Result<Vec<Generator>> {
    let mut gens = Vec::new();
    let c = Color(0);
    for (axis, ns) in cube.n.iter().enumerate() {
        let mut ns = ns.clone();
        ns.sort_unstable();
        ns.dedup();
        for n in ns {
            let name = if cube.d == 1 { format!("C{n}") } else { format!("C{n}@{}", axis + 1) };
            let maps = (0..n).map(|k| AffineMap::slab(cube.d, axis, k, n)).collect();
            gens.push(Generator { name, inputs: ColorWord::uniform(c, n as usize), output: c, maps: Some(maps) });
        }
    }
    Ok(gens)
}

fn validate_geometry(op: &Operad, geo: &Geometry) -> Result<()> {
    for c in 0..op.color_count() {
        let shape = &geo.shapes[c];
        let verts = shape.vertices();
        for m in op.symmetries(Color(c as u16)) {
            let mut img: Vec<_> = verts.iter().map(|v| m.apply(v)).collect();
            let mut orig = verts.clone();
            img.sort();
            orig.sort();
            if img != orig {
                return Err(Error::invalid(format!("a degree-1 map of `{}` is not a symmetry of its shape", op.colors[c])));
            }
        }
    }
    for g in &op.gens {
        let maps = g.maps.as_ref().expect("geometric generators carry maps");
        let out = super::affine::Region::new(&geo.shapes[g.output.0 as usize], &AffineMap::identity(geo.dimension));
        for (c, m) in g.inputs.iter().zip(maps) {
            if m.determinant_sign() == 0 {
                return Err(Error::invalid(format!("generator `{}` has a degenerate piece", g.name)));
            }
            let r = super::affine::Region::new(&geo.shapes[c.0 as usize], m);
            if !out.contains_region(&r) {
                return Err(Error::invalid(format!("generator `{}` has a piece outside its shape", g.name)));
            }
        }
    }
    Ok(())
}
