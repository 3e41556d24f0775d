/**
 * Corpus extractor: walks a directory of TypeScript/JavaScript sources and
 * emits one JSONL record per program unit (function, method, arrow/function
 * expression, or module main block).
 *
 * Each record lists the instruction identifiers the unit uses, in source
 * order: operators as normalized tokens (op.add, op.index, ...) and calls by
 * their best-effort lexical name (direct identifier, or the terminal property
 * name for attribute calls).  Identifiers absent from the supplied catalog
 * are dropped and counted.  Output is deterministic: files are visited in
 * sorted relative-path order and nothing in a record depends on the clock.
 */

import * as fs from "fs";
import * as path from "path";
import ts from "typescript";

export interface Summary {
  filesParsed: number;
  filesSkipped: number;
  unitsEmitted: number;
  unitsEmpty: number;
  idsDropped: number;
}

export interface UnitRecord {
  pu_id: string;
  origin: string;
  instructions: string[];
}

const BINARY_OPS: Partial<Record<ts.SyntaxKind, string>> = {
  [ts.SyntaxKind.PlusToken]: "op.add",
  [ts.SyntaxKind.PlusEqualsToken]: "op.add",
  [ts.SyntaxKind.MinusToken]: "op.sub",
  [ts.SyntaxKind.MinusEqualsToken]: "op.sub",
  [ts.SyntaxKind.AsteriskToken]: "op.mul",
  [ts.SyntaxKind.AsteriskEqualsToken]: "op.mul",
  [ts.SyntaxKind.SlashToken]: "op.div",
  [ts.SyntaxKind.SlashEqualsToken]: "op.div",
  [ts.SyntaxKind.PercentToken]: "op.mod",
  [ts.SyntaxKind.PercentEqualsToken]: "op.mod",
  [ts.SyntaxKind.AsteriskAsteriskToken]: "op.pow",
  [ts.SyntaxKind.EqualsEqualsToken]: "op.eq",
  [ts.SyntaxKind.EqualsEqualsEqualsToken]: "op.eq",
  [ts.SyntaxKind.ExclamationEqualsToken]: "op.neq",
  [ts.SyntaxKind.ExclamationEqualsEqualsToken]: "op.neq",
  [ts.SyntaxKind.LessThanToken]: "op.lt",
  [ts.SyntaxKind.LessThanEqualsToken]: "op.le",
  [ts.SyntaxKind.GreaterThanToken]: "op.gt",
  [ts.SyntaxKind.GreaterThanEqualsToken]: "op.ge",
  [ts.SyntaxKind.AmpersandAmpersandToken]: "op.and",
  [ts.SyntaxKind.BarBarToken]: "op.or",
  [ts.SyntaxKind.QuestionQuestionToken]: "op.or",
};

function isFunctionLike(node: ts.Node): node is ts.FunctionLikeDeclaration {
  return (
    ts.isFunctionDeclaration(node) ||
    ts.isMethodDeclaration(node) ||
    ts.isArrowFunction(node) ||
    ts.isFunctionExpression(node) ||
    ts.isConstructorDeclaration(node) ||
    ts.isGetAccessorDeclaration(node) ||
    ts.isSetAccessorDeclaration(node)
  );
}

function callName(node: ts.CallExpression | ts.NewExpression): string | null {
  const callee = node.expression;
  if (ts.isIdentifier(callee)) return callee.text;
  if (ts.isPropertyAccessExpression(callee)) return callee.name.text;
  return null;
}

/** Collect instruction ids inside one unit, stopping at nested functions. */
function collectInstructions(roots: readonly ts.Node[], out: string[]): void {
  const visit = (node: ts.Node): void => {
    if (isFunctionLike(node)) return; // nested unit, collected separately
    if (ts.isBinaryExpression(node)) {
      const op = BINARY_OPS[node.operatorToken.kind];
      if (op) out.push(op);
    } else if (ts.isPrefixUnaryExpression(node)) {
      if (node.operator === ts.SyntaxKind.ExclamationToken) out.push("op.not");
      if (node.operator === ts.SyntaxKind.MinusToken) out.push("op.neg");
      if (node.operator === ts.SyntaxKind.PlusPlusToken) out.push("op.add");
      if (node.operator === ts.SyntaxKind.MinusMinusToken) out.push("op.sub");
    } else if (ts.isPostfixUnaryExpression(node)) {
      if (node.operator === ts.SyntaxKind.PlusPlusToken) out.push("op.add");
      if (node.operator === ts.SyntaxKind.MinusMinusToken) out.push("op.sub");
    } else if (ts.isElementAccessExpression(node)) {
      out.push("op.index");
    } else if (ts.isTemplateExpression(node)) {
      out.push("op.add"); // interpolation is string concatenation
    } else if (ts.isCallExpression(node) || ts.isNewExpression(node)) {
      const name = callName(node);
      if (name) out.push(name);
    }
    ts.forEachChild(node, visit);
  };
  for (const root of roots) visit(root);
}

function unitName(node: ts.FunctionLikeDeclaration, sf: ts.SourceFile): string {
  const className = (): string => {
    const parent = node.parent;
    if ((ts.isClassDeclaration(parent) || ts.isClassExpression(parent)) && parent.name) {
      return parent.name.text;
    }
    return "<class>";
  };
  if (ts.isFunctionDeclaration(node) && node.name) return node.name.text;
  if (ts.isConstructorDeclaration(node)) return `${className()}.constructor`;
  if (
    (ts.isMethodDeclaration(node) ||
      ts.isGetAccessorDeclaration(node) ||
      ts.isSetAccessorDeclaration(node)) &&
    ts.isIdentifier(node.name)
  ) {
    return `${className()}.${node.name.text}`;
  }
  if (ts.isArrowFunction(node) || ts.isFunctionExpression(node)) {
    const parent = node.parent;
    if (ts.isVariableDeclaration(parent) && ts.isIdentifier(parent.name)) {
      return parent.name.text;
    }
    if (ts.isPropertyAssignment(parent) && ts.isIdentifier(parent.name)) {
      return parent.name.text;
    }
    if (
      ts.isBinaryExpression(parent) &&
      parent.operatorToken.kind === ts.SyntaxKind.EqualsToken &&
      ts.isPropertyAccessExpression(parent.left)
    ) {
      return parent.left.name.text;
    }
  }
  const { line, character } = sf.getLineAndCharacterOfPosition(node.getStart(sf));
  return `<anon@${line + 1}:${character + 1}>`;
}

const MAIN_EXCLUDED = new Set<ts.SyntaxKind>([
  ts.SyntaxKind.FunctionDeclaration,
  ts.SyntaxKind.ClassDeclaration,
  ts.SyntaxKind.InterfaceDeclaration,
  ts.SyntaxKind.TypeAliasDeclaration,
  ts.SyntaxKind.EnumDeclaration,
  ts.SyntaxKind.ImportDeclaration,
  ts.SyntaxKind.ExportDeclaration,
  ts.SyntaxKind.ModuleDeclaration,
]);

/** All program units of one parsed source file, main block first. */
export function fileUnits(sf: ts.SourceFile, origin: string): UnitRecord[] {
  const units: UnitRecord[] = [];

  const mainStatements = sf.statements.filter((s) => !MAIN_EXCLUDED.has(s.kind));
  const mainInstructions: string[] = [];
  collectInstructions(mainStatements, mainInstructions);
  if (mainInstructions.length > 0) {
    units.push({ pu_id: `${origin}::<main>`, origin, instructions: mainInstructions });
  }

  const functions: ts.FunctionLikeDeclaration[] = [];
  const findFunctions = (node: ts.Node): void => {
    if (isFunctionLike(node)) functions.push(node);
    ts.forEachChild(node, findFunctions);
  };
  ts.forEachChild(sf, findFunctions);

  const used = new Map<string, number>();
  for (const fn of functions) {
    const instructions: string[] = [];
    if (fn.body) collectInstructions([fn.body], instructions);
    let name = unitName(fn, sf);
    const seen = (used.get(name) ?? 0) + 1;
    used.set(name, seen);
    if (seen > 1) name = `${name}#${seen}`;
    units.push({ pu_id: `${origin}::${name}`, origin, instructions });
  }
  return units;
}

function walkSources(srcDir: string): string[] {
  const out: string[] = [];
  const recurse = (dir: string): void => {
    for (const entry of fs.readdirSync(dir, { withFileTypes: true })) {
      if (entry.name.startsWith(".") || entry.name === "node_modules") continue;
      const full = path.join(dir, entry.name);
      if (entry.isDirectory()) {
        recurse(full);
      } else if (/\.(ts|tsx|js)$/.test(entry.name) && !entry.name.endsWith(".d.ts")) {
        out.push(full);
      }
    }
  };
  recurse(srcDir);
  return out.sort((a, b) => (a < b ? -1 : a > b ? 1 : 0));
}

function loadCatalogIds(catalogPath: string): Set<string> {
  const data = JSON.parse(fs.readFileSync(catalogPath, "utf-8"));
  if (!Array.isArray(data.instructions)) {
    throw new Error(`catalog ${catalogPath} has no 'instructions' list`);
  }
  return new Set(data.instructions.map((entry: { id: string }) => entry.id));
}

function renderLine(record: UnitRecord): string {
  // fixed key order, compact separators: matches the primary tool's emitter
  return JSON.stringify({
    instructions: record.instructions,
    origin: record.origin,
    pu_id: record.pu_id,
  });
}

export function extractCorpus(
  srcDir: string,
  catalogPath: string
): { lines: string[]; summary: Summary } {
  const catalogIds = loadCatalogIds(catalogPath);
  const summary: Summary = {
    filesParsed: 0,
    filesSkipped: 0,
    unitsEmitted: 0,
    unitsEmpty: 0,
    idsDropped: 0,
  };
  const lines: string[] = [];

  for (const file of walkSources(srcDir)) {
    const origin = path.relative(srcDir, file).split(path.sep).join("/");
    const text = fs.readFileSync(file, "utf-8");
    const sf = ts.createSourceFile(origin, text, ts.ScriptTarget.ES2020, true);
    const diagnostics = (sf as unknown as { parseDiagnostics?: unknown[] }).parseDiagnostics ?? [];
    if (diagnostics.length > 0) {
      summary.filesSkipped += 1;
      continue;
    }
    summary.filesParsed += 1;
    for (const unit of fileUnits(sf, origin)) {
      const kept = unit.instructions.filter((id) => catalogIds.has(id));
      summary.idsDropped += unit.instructions.length - kept.length;
      if (kept.length === 0) {
        summary.unitsEmpty += 1;
        continue;
      }
      lines.push(renderLine({ ...unit, instructions: kept }));
      summary.unitsEmitted += 1;
    }
  }
  return { lines, summary };
}

export function main(argv: string[]): number {
  const positional: string[] = [];
  let catalogPath = "";
  let outPath = "";
  for (let i = 0; i < argv.length; i += 1) {
    if (argv[i] === "--catalog") {
      catalogPath = argv[++i] ?? "";
    } else if (argv[i] === "--out") {
      outPath = argv[++i] ?? "";
    } else {
      positional.push(argv[i]);
    }
  }
  if (positional.length !== 1 || !catalogPath || !outPath) {
    console.error("usage: extract <src_dir> --catalog <catalog.json> --out <corpus.jsonl>");
    return 2;
  }
  const [srcDir] = positional;
  if (!fs.existsSync(catalogPath)) {
    console.error(`error: catalog not found: ${catalogPath}`);
    return 1;
  }
  if (!fs.existsSync(srcDir) || !fs.statSync(srcDir).isDirectory()) {
    console.error(`error: source directory not found: ${srcDir}`);
    return 1;
  }
  const { lines, summary } = extractCorpus(srcDir, catalogPath);
  if (lines.length === 0) {
    console.error("error: no program units with catalog instructions found");
    return 1;
  }
  fs.writeFileSync(outPath, lines.join("\n") + "\n", "utf-8");
  console.log(
    `parsed ${summary.filesParsed} files (${summary.filesSkipped} skipped), ` +
      `emitted ${summary.unitsEmitted} units (${summary.unitsEmpty} empty), ` +
      `dropped ${summary.idsDropped} non-catalog ids -> ${outPath}`
  );
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
