use crate::reader::{Form, FormKind, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefKind {
    Defn,
    DefnPrivate,
    Defmacro,
    Fn,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param<'a> {
    Positional(&'a Form),
    Destructure(&'a Form),
    Rest(&'a Form),
}

impl<'a> Param<'a> {
    pub fn form(&self) -> &'a Form {
        match self {
            Param::Positional(f) | Param::Destructure(f) | Param::Rest(f) => f,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Arity<'a> {
    pub params: Vec<Param<'a>>,
    pub param_vector: &'a Form,
    /// Body forms, excluding a leading `{:pre .. :post ..}` condition map.
    pub body: Vec<&'a Form>,
    /// The arity list for multi-arity definitions, otherwise the whole form.
    pub span: Span,
}

impl<'a> Arity<'a> {
    /// Parameters before `&`.
    pub fn positional(&self) -> impl Iterator<Item = &Param<'a>> {
        self.params.iter().filter(|p| !matches!(p, Param::Rest(_)))
    }

    pub fn rest(&self) -> Option<&'a Form> {
        self.params.iter().find_map(|p| match p {
            Param::Rest(f) => Some(*f),
            _ => None,
        })
    }

    /// Span from the first to the last body form.
    pub fn body_span(&self) -> Option<Span> {
        let first = self.body.first()?;
        let last = self.body.last()?;
        Some(first.span.join(&last.span))
    }
}

#[derive(Debug, Clone)]
pub struct FnDef<'a> {
    pub form: &'a Form,
    pub kind: DefKind,
    /// `None` for anonymous `fn`s.
    pub name: Option<&'a Form>,
    pub is_macro: bool,
    pub is_private: bool,
    pub docstring: Option<&'a str>,
    pub attr_map: Option<&'a Form>,
    pub arities: Vec<Arity<'a>>,
    /// Shape problems that were tolerated.
    pub notes: Vec<String>,
}

impl<'a> FnDef<'a> {
    pub fn name_str(&self) -> Option<&'a str> {
        self.name.and_then(|n| n.unwrap_meta().simple_symbol())
    }
}

/// Head name of a definition form, accepting `clojure.core/` qualification.
pub(crate) fn def_head(form: &Form) -> Option<&str> {
    let sym = form.head()?.as_symbol()?;
    match sym.ns.as_deref() {
        None | Some("clojure.core") => Some(sym.name.as_str()),
        _ => None,
    }
}

fn has_private_meta(form: &Form) -> bool {
    let mut cur = form;
    while let FormKind::Meta { meta, target } = &cur.kind {
        match &meta.kind {
            FormKind::Keyword(k) if k.ns.is_none() && k.name == "private" => return true,
            FormKind::Map(items) => {
                for pair in items.chunks(2) {
                    if let [k, v] = pair {
                        if k.as_keyword().is_some_and(|k| k.name == "private") && matches!(v.kind, FormKind::Bool(true)) {
                            return true;
                        }
                    }
                }
            }
            _ => {}
        }
        cur = target;
    }
    false
}

/// Recognizes `defn`, `defn-`, `defmacro` and `fn` forms.
pub fn classify_defn(form: &Form) -> Option<FnDef<'_>> {
    let kind = match def_head(form)? {
        "defn" => DefKind::Defn,
        "defn-" => DefKind::DefnPrivate,
        "defmacro" => DefKind::Defmacro,
        "fn" | "fn*" => DefKind::Fn,
        _ => return None,
    };
    let items: Vec<&Form> = Form::live(form.as_list()?).skip(1).collect();
    let mut idx = 0;
    let mut name = None;
    if let Some(first) = items.first() {
        if first.unwrap_meta().simple_symbol().is_some() {
            name = Some(*first);
            idx = 1;
        }
    }
    if kind != DefKind::Fn && name.is_none() {
        return None;
    }
    let mut docstring = None;
    let mut attr_map = None;
    if kind != DefKind::Fn {
        if let Some(s) = items.get(idx).and_then(|f| f.as_str()) {
            docstring = Some(s);
            idx += 1;
        }
        if let Some(m) = items.get(idx).filter(|f| matches!(f.kind, FormKind::Map(_))) {
            attr_map = Some(*m);
            idx += 1;
        }
    }
    let mut is_private = kind == DefKind::DefnPrivate || name.is_some_and(has_private_meta);
    if let Some(m) = attr_map.and_then(Form::as_map) {
        for pair in m.chunks(2) {
            if let [k, v] = pair {
                if k.as_keyword().is_some_and(|k| k.name == "private") && matches!(v.kind, FormKind::Bool(true)) {
                    is_private = true;
                }
            }
        }
    }
    let mut notes = Vec::new();
    let mut arities = Vec::new();
    match items.get(idx).map(|f| &f.unwrap_meta().kind) {
        Some(FormKind::Vector(_)) => {
            let params = items[idx].unwrap_meta();
            arities.push(arity(params, &items[idx + 1..], form.span, &mut notes));
        }
        Some(FormKind::List(_)) => {
            for item in &items[idx..] {
                let Some(list) = item.as_list() else {
                    // trailing attr map on multi-arity defns
                    continue;
                };
                let parts: Vec<&Form> = Form::live(list).collect();
                match parts.first().map(|p| p.unwrap_meta()) {
                    Some(params) if params.as_vector().is_some() => {
                        arities.push(arity(params, &parts[1..], item.span, &mut notes));
                    }
                    _ => notes.push(format!("malformed arity at {}", item.span.start)),
                }
            }
        }
        _ => return None,
    }
    if arities.is_empty() {
        return None;
    }
    let mut counts: Vec<usize> = arities.iter().filter(|a| a.rest().is_none()).map(|a| a.params.len()).collect();
    counts.sort_unstable();
    if counts.windows(2).any(|w| w[0] == w[1]) {
        notes.push("arities with the same parameter count".into());
    }
    Some(FnDef {
        form,
        kind,
        name,
        is_macro: kind == DefKind::Defmacro,
        is_private,
        docstring,
        attr_map,
        arities,
        notes,
    })
}

fn arity<'a>(params: &'a Form, body: &[&'a Form], span: Span, notes: &mut Vec<String>) -> Arity<'a> {
    let mut out = Vec::new();
    let mut after_amp = false;
    for p in Form::live(params.as_vector().unwrap_or(&[])) {
        if p.is_simple_symbol("&") {
            after_amp = true;
            continue;
        }
        let bare = p.unwrap_meta();
        let param = if after_amp {
            Param::Rest(bare)
        } else if matches!(bare.kind, FormKind::Symbol(_)) {
            Param::Positional(bare)
        } else {
            Param::Destructure(bare)
        };
        out.push(param);
    }
    let rests = out.iter().filter(|p| matches!(p, Param::Rest(_))).count();
    if rests > 1 || (rests == 1 && !matches!(out.last(), Some(Param::Rest(_)))) {
        notes.push(format!("more than one parameter after & at {}", params.span.start));
    }
    let mut body: Vec<&Form> = body.to_vec();
    if body.len() > 1 && matches!(body[0].kind, FormKind::Map(_)) {
        body.remove(0);
    }
    Arity { params: out, param_vector: params, body, span }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::read_one;

    #[test]
    fn single_arity_with_docstring() {
        let form = read_one("(defn f \"doc\" [a b] (+ a b))").unwrap();
        let def = classify_defn(&form).unwrap();
        assert_eq!(def.name_str(), Some("f"));
        assert_eq!(def.docstring, Some("doc"));
        assert_eq!(def.arities.len(), 1);
        let names: Vec<_> = def.arities[0].params.iter().map(|p| p.form().simple_symbol().unwrap()).collect();
        assert_eq!(names, ["a", "b"]);
        assert_eq!(def.arities[0].body.len(), 1);
        assert!(!def.is_macro);
    }

    #[test]
    fn multi_arity() {
        let form = read_one("(defn g ([x] x) ([x y] y))").unwrap();
        let def = classify_defn(&form).unwrap();
        assert_eq!(def.arities.len(), 2);
        assert_ne!(def.arities[0].span, form.span);
    }

    #[test]
    fn macro_flag() {
        let form = read_one("(defmacro m [x] x)").unwrap();
        assert!(classify_defn(&form).unwrap().is_macro);
    }

    #[test]
    fn privacy() {
        for src in ["(defn- f [] 1)", "(defn ^:private f [] 1)", "(defn f {:private true} [] 1)"] {
            assert!(classify_defn(&read_one(src).unwrap()).unwrap().is_private, "{src}");
        }
    }

    #[test]
    fn params_rest_and_destructuring() {
        let form = read_one("(fn named [a {:keys [b]} [c d] & more] a)").unwrap();
        let def = classify_defn(&form).unwrap();
        assert_eq!(def.kind, DefKind::Fn);
        assert_eq!(def.name_str(), Some("named"));
        let arity = &def.arities[0];
        assert!(matches!(arity.params[0], Param::Positional(_)));
        assert!(matches!(arity.params[1], Param::Destructure(_)));
        assert!(matches!(arity.params[2], Param::Destructure(_)));
        assert!(matches!(arity.params[3], Param::Rest(_)));
        assert_eq!(arity.positional().count(), 3);
    }

    #[test]
    fn condition_map_is_not_body() {
        let form = read_one("(defn f [x] {:pre [(pos? x)]} (inc x))").unwrap();
        let def = classify_defn(&form).unwrap();
        assert_eq!(def.arities[0].body.len(), 1);
        let form = read_one("(defn f [x] {:a x})").unwrap();
        assert_eq!(classify_defn(&form).unwrap().arities[0].body.len(), 1);
    }

    #[test]
    fn unrecognized_shapes() {
        for src in ["(def x 1)", "(defn)", "(defn f)", "(foo [x] x)", "[defn f [] 1]"] {
            assert!(classify_defn(&read_one(src).unwrap()).is_none(), "{src}");
        }
    }

    #[test]
    fn duplicate_arity_counts_are_noted() {
        let form = read_one("(defn f ([a] 1) ([b] 2))").unwrap();
        assert_eq!(classify_defn(&form).unwrap().notes.len(), 1);
    }
}
