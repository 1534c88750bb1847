#!/usr/bin/env python3
"""Independent per-method metric oracle for simply formatted Java fixtures.

Supported layout: one top-level class per file, members indented by four
spaces, method headers on a single line ending in `{`, and the closing
brace of each method alone on a line at member indentation. Ignore globs are
limited to `<dir>/` prefixes matched anywhere in the path.

Prints (or checks) a JSON document with every submetric's sorted sample.
"""
import argparse
import json
import pathlib
import re
import sys

KEYWORDS = set(
    "continue for new switch assert synchronized boolean do if this break double throw byte else case "
    "instanceof return transient catch int short try char final finally long float super while strictfp".split()
)
RESERVED = KEYWORDS | set(
    "abstract class const default enum extends goto implements import interface native package private "
    "protected public static throws void volatile".split()
)
PRIMITIVES = {"int", "long", "short", "byte", "char", "boolean", "double", "float"}
OPERATORS = sorted(
    [">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
     "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "=", "<", ">", "!", "~", "?", ":",
     "+", "-", "*", "/", "%", "&", "|", "^", "."],
    key=len, reverse=True,
)
PUNCT = set("()[]{};,@")
TOKEN_RE = re.compile(
    r'(?P<ws>\s+)|(?P<lc>//[^\n]*)|(?P<bc>/\*.*?\*/)|(?P<str>"(?:\\.|[^"\\])*")|(?P<chr>\'(?:\\.|[^\'\\])+\')'
    r'|(?P<num>\d[\w.]*)|(?P<word>[A-Za-z_$][\w$]*)|(?P<punct>[()\[\]{};,@])|(?P<op>'
    + "|".join(re.escape(o) for o in OPERATORS) + ")",
    re.S,
)


def lex(text):
    """(text, line) pairs."""
    out, pos, line = [], 0, 1
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise SystemExit(f"oracle cannot lex at line {line}: {text[pos:pos + 20]!r}")
        kind = m.lastgroup
        if kind not in ("ws", "lc", "bc"):
            out.append((m.group(), line))
        line += m.group().count("\n")
        pos = m.end()
    return out


def symbols(text):
    return sum(1 for c in text if not c.isspace())


def class_members(lines):
    fields, methods, spans = {}, set(), []
    i = 0
    while i < len(lines):
        line = lines[i]
        header = re.match(r"^    (?!\s)(.*?)\b(\w+)\s*\(([^)]*)\)\s*\{$", line)
        if header:
            methods.add(header.group(2))
            end = i + 1
            while lines[end] != "    }":
                end += 1
            spans.append((i, end, header.group(2)))
            i = end + 1
            continue
        field = re.match(r"^    (?!\s)(?:[\w<>,\s]+\s)?(\w+)\s*(=.*)?;$", line)
        if field and "(" not in line.split("=")[0]:
            fields[field.group(1)] = True
        i += 1
    return fields, methods, spans


def local_declarations(tokens):
    """Indices of names introduced by `Type name` with Type primitive, capitalized or generic-closed."""
    names = []
    for k in range(1, len(tokens) - 1):
        prev, cur, nxt = tokens[k - 1][0], tokens[k][0], tokens[k + 1][0]
        is_type = prev in PRIMITIVES or prev == ">" or prev == "]" or (prev[:1].isupper() and prev not in RESERVED)
        if is_type and re.fullmatch(r"[a-z_]\w*", cur) and cur not in RESERVED and nxt in ("=", ";", ":", ","):
            if k >= 2 and tokens[k - 2][0] == ".":
                continue
            names.append((cur, k))
    return names


def profile(tokens, first_line, line_count):
    """Brace-counter depth at each line's first token; token-less lines take the counter's current value."""
    by_line = {}
    for text, line in tokens:
        by_line.setdefault(line, []).append(text)
    result, depth = [], 1
    for ln in range(first_line, first_line + line_count):
        texts = by_line.get(ln)
        if not texts:
            result.append(depth)
            continue
        for k, text in enumerate(texts):
            if text == "}":
                depth = max(1, depth - 1)
            if k == 0:
                result.append(depth)
            if text == "{":
                depth += 1
    return result


def method_vector(lines, start, end, fields, methods):
    body_lines = lines[start + 1:end]
    while body_lines and not body_lines[0].strip():
        body_lines = body_lines[1:]
        start += 1
    while body_lines and not body_lines[-1].strip():
        body_lines = body_lines[:-1]
    body = "\n".join(body_lines)
    tokens = lex(body)
    n = len(body_lines)
    kw = sum(1 for t, _ in tokens if t in KEYWORDS)

    locals_ = local_declarations(tokens)
    field_refs = method_refs = 0
    for k, (t, _) in enumerate(tokens):
        if not re.fullmatch(r"[A-Za-z_$][\w$]*", t) or t in RESERVED or t in ("true", "false", "null"):
            continue
        qualified = k > 0 and tokens[k - 1][0] == "."
        via_this = qualified and k > 1 and tokens[k - 2][0] == "this"
        if qualified and not via_this:
            continue
        if k + 1 < len(tokens) and tokens[k + 1][0] == "(":
            if not (k > 0 and tokens[k - 1][0] == "new") and t in methods:
                method_refs += 1
            continue
        if t in fields and (via_this or not any(name == t and at <= k for name, at in locals_)):
            field_refs += 1

    area = sum(profile(tokens, 1, n))
    return kw, n, field_refs, method_refs, area, body


def vectors_for(path):
    lines = path.read_text().split("\n")
    fields, methods, spans = class_members(lines)
    out = []
    for start, end, name in spans:
        kw, n, f, m, area, body = method_vector(lines, start, end, fields, methods)
        decl_lines = lines[start:end + 1]
        decl_n = len(decl_lines)
        decl_sym = symbols("\n".join(decl_lines))
        seg_sym = symbols(body)
        out.append({
            "keyword.total": kw,
            "keyword.density": kw / n,
            "coupling.total.total": f + m,
            "coupling.total.field": f,
            "coupling.total.method": m,
            "coupling.density.total": (f + m) / n,
            "coupling.density.field": f / n,
            "coupling.density.method": m / n,
            "complexity.total_area": area,
            "complexity.area_density": area / n,
            "complexity.method_area": area,
            "complexity.method_depth_density": area / n,
            "size.lines.segment": n,
            "size.symbols.segment": seg_sym,
            "size.symbol_density.segment": seg_sym / n,
            "size.lines.method_declaration": decl_n,
            "size.symbols.method_declaration": decl_sym,
            "size.symbol_density.method_declaration": decl_sym / decl_n,
        })
    return out


def distribution(root, ignore_dirs):
    vectors = []
    for path in sorted(pathlib.Path(root).rglob("*.java")):
        rel = path.relative_to(root).as_posix()
        if any(f"{d}/" in "/" + rel for d in ignore_dirs):
            continue
        vectors.extend(vectors_for(path))
    names = sorted(vectors[0]) if vectors else []
    return {
        "methodCount": len(vectors),
        "samples": {name: sorted(float(v[name]) for v in vectors) for name in names},
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("root")
    parser.add_argument("--check", help="compare with an existing golden file instead of printing")
    args = parser.parse_args()
    result = distribution(args.root, ["target", "build"])
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if args.check:
        golden = pathlib.Path(args.check).read_text()
        if json.loads(golden) != json.loads(text):
            print("golden distribution differs from the oracle", file=sys.stderr)
            return 1
        print("golden distribution matches the oracle")
        return 0
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
