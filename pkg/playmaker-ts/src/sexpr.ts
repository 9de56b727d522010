/**
 * Minimal S-expression reader for the simulation server's wire dialect:
 * parenthesized lists of bare atoms and double-quoted strings.
 */

export type SExpr = string | SExpr[];

export function parseSexpr(text: string): SExpr {
  let pos = 0;

  const error = (message: string): Error =>
    new Error(`sexpr parse error at ${pos}: ${message}`);

  const skipSpace = (): void => {
    while (pos < text.length && (text[pos] === " " || text[pos] === "\t")) pos++;
  };

  const readAtom = (): string => {
    if (text[pos] === '"') {
      pos++;
      let out = "";
      while (pos < text.length && text[pos] !== '"') {
        if (text[pos] === "\\" && pos + 1 < text.length) pos++;
        out += text[pos];
        pos++;
      }
      if (pos >= text.length) throw error("unterminated string");
      pos++;
      return out;
    }
    const start = pos;
    while (pos < text.length && !' \t()"'.includes(text[pos])) pos++;
    if (pos === start) throw error(`unexpected character ${text[pos]}`);
    return text.slice(start, pos);
  };

  const readExpr = (): SExpr => {
    skipSpace();
    if (pos >= text.length) throw error("unexpected end of input");
    if (text[pos] !== "(") return readAtom();
    pos++;
    const items: SExpr[] = [];
    for (;;) {
      skipSpace();
      if (pos >= text.length) throw error("unbalanced parens");
      if (text[pos] === ")") {
        pos++;
        return items;
      }
      items.push(readExpr());
    }
  };

  const expr = readExpr();
  skipSpace();
  if (pos < text.length) throw error("trailing data");
  return expr;
}

export function head(expr: SExpr): string | null {
  if (Array.isArray(expr) && expr.length > 0 && typeof expr[0] === "string") {
    return expr[0];
  }
  return null;
}
