/** Lookup-table rendering with the trace's chosen cells highlighted. */
import type { TablesDoc, TraceFact } from "./types";
import { CLASSES, CONNECTIVITIES, EXPOSURES, IMPACTS, PROTECTIONS } from "./types";

export interface CellRef {
  row: string;
  column: string;
}

/** The exact cells the latest result read, straight from its trace. */
export function highlightedCells(trace: TraceFact[]): { exposure: CellRef | null; class: CellRef | null } {
  const find = (table: "exposure" | "class"): CellRef | null => {
    const fact = trace.find((f) => f.table === table);
    return fact && fact.row && fact.column ? { row: fact.row, column: fact.column } : null;
  };
  return { exposure: find("exposure"), class: find("class") };
}

const CLASS_TONE: Record<string, string> = Object.fromEntries(
  CLASSES.map((c, i) => [c, `tone-${i}`]),
);
const EXPOSURE_TONE: Record<string, string> = Object.fromEntries(
  EXPOSURES.map((e, i) => [e, `tone-${i + 1}`]),
);

function matrix(
  title: string,
  corner: string,
  rows: string[],
  columns: string[],
  cellValue: (row: string, column: string) => string,
  tone: Record<string, string>,
  highlight: CellRef | null,
): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "matrix";
  const caption = document.createElement("h4");
  caption.textContent = title;
  wrap.appendChild(caption);

  const table = document.createElement("table");
  table.className = "lookup";
  const head = table.insertRow();
  const corner_ = document.createElement("th");
  corner_.textContent = corner;
  head.appendChild(corner_);
  for (const column of columns) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  for (const row of rows) {
    const tr = table.insertRow();
    const th = document.createElement("th");
    th.textContent = row;
    tr.appendChild(th);
    for (const column of columns) {
      const td = tr.insertCell();
      const value = cellValue(row, column);
      td.textContent = value;
      td.className = tone[value] ?? "";
      td.dataset.row = row;
      td.dataset.column = column;
      if (highlight && highlight.row === row && highlight.column === column) {
        td.classList.add("highlight");
      }
    }
  }
  wrap.appendChild(table);
  return wrap;
}

/** Render both lookup tables; `trace` (when given) marks one cell each. */
export function renderLookupTables(
  container: HTMLElement,
  tables: TablesDoc,
  trace: TraceFact[] = [],
): void {
  const cells = highlightedCells(trace);
  container.replaceChildren(
    matrix(
      `Exposure lookup (${tables.origin} tables)`,
      "P \\ C",
      PROTECTIONS,
      CONNECTIVITIES,
      (p, c) => tables.exposure[p as keyof typeof tables.exposure][c as never],
      EXPOSURE_TONE,
      cells.exposure,
    ),
    matrix(
      "Class lookup",
      "Impact \\ E",
      IMPACTS,
      EXPOSURES,
      (i, e) => tables.class[i as keyof typeof tables.class][e as never],
      CLASS_TONE,
      cells.class,
    ),
  );
}
