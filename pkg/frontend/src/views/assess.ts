/** Activity 3 (step 8): the criteria checklist with optional beliefs. */
import type { AppContext } from "../context";
import { FIELD_HELP, helpIcon } from "../help";
import type { AnswerStatus, CatalogCriterion, ComponentDoc } from "../types";

const STATUSES: AnswerStatus[] = ["satisfied", "unsatisfied", "not_applicable"];
const STATUS_LABEL: Record<AnswerStatus, string> = {
  satisfied: "satisfied",
  unsatisfied: "unsatisfied",
  not_applicable: "N/A",
};

export function renderAssess(root: HTMLElement, ctx: AppContext): void {
  const { system, catalog, wizard } = ctx.store.get();
  const page = document.createElement("section");
  page.className = "page";
  const heading = document.createElement("h2");
  heading.textContent = "Step 8 - Protection criteria";
  page.appendChild(heading);

  const component =
    system?.components.find((c) => c.id === wizard.componentId) ?? system?.components[0];
  if (!system || !component || !catalog) {
    root.appendChild(page);
    return;
  }

  const subtitle = document.createElement("p");
  subtitle.className = "hint";
  subtitle.textContent =
    `Answer every criterion for "${component.name}". The protection level is the ` +
    "highest one whose full requirement set is satisfied or not applicable.";
  page.appendChild(subtitle);

  const byId = new Map(catalog.criteria.map((c) => [c.id, c]));
  const list = document.createElement("ul");
  list.className = "criteria";
  for (const answer of component.answers) {
    const criterion = byId.get(answer.criterion_id);
    list.appendChild(criterionRow(ctx, component, answer.criterion_id, criterion, answer.status));
  }
  page.appendChild(list);

  // beliefs stay out of the way unless asked for
  const beliefs = document.createElement("details");
  beliefs.id = "belief-panel";
  const summary = document.createElement("summary");
  summary.textContent = "Confidence (beliefs and weights)";
  summary.appendChild(helpIcon("Beliefs and weights", FIELD_HELP.beliefs));
  beliefs.appendChild(summary);
  const grid = document.createElement("div");
  grid.className = "belief-grid";
  for (const answer of component.answers) {
    const row = document.createElement("div");
    row.className = "belief-row";
    const label = document.createElement("span");
    label.textContent = answer.criterion_id;
    const belief = document.createElement("input");
    belief.type = "number";
    belief.min = "0";
    belief.max = "1";
    belief.step = "0.05";
    belief.value = String(answer.belief);
    belief.onchange = () =>
      ctx.patchAnswer(component.id, answer.criterion_id, { belief: Number(belief.value) });
    const weight = document.createElement("input");
    weight.type = "number";
    weight.min = "0";
    weight.step = "0.5";
    weight.value = String(answer.weight);
    weight.onchange = () =>
      ctx.patchAnswer(component.id, answer.criterion_id, { weight: Number(weight.value) });
    row.append(label, belief, weight);
    grid.appendChild(row);
  }
  beliefs.appendChild(grid);
  page.appendChild(beliefs);
  root.appendChild(page);
}

function criterionRow(
  ctx: AppContext,
  component: ComponentDoc,
  criterionId: string,
  criterion: CatalogCriterion | undefined,
  current: AnswerStatus,
): HTMLElement {
  const item = document.createElement("li");
  item.className = `criterion status-${current}`;
  item.dataset.criterion = criterionId;

  const title = document.createElement("span");
  title.className = "criterion-title";
  title.textContent = criterion?.title ?? criterionId;
  item.appendChild(title);
  if (criterion) {
    const level = document.createElement("span");
    level.className = "badge";
    level.textContent = `from ${criterion.required_from_level}`;
    item.appendChild(level);
    if (criterion.min_connectivity) {
      const conditional = document.createElement("span");
      conditional.className = "badge soft";
      conditional.textContent = `if ≥ ${criterion.min_connectivity}`;
      item.appendChild(conditional);
    }
    item.appendChild(helpIcon(criterion.title, criterion.help));
  }

  const toggles = document.createElement("span");
  toggles.className = "toggles";
  for (const status of STATUSES) {
    const button = document.createElement("button");
    button.textContent = STATUS_LABEL[status];
    button.className = status === current ? "toggle active" : "toggle";
    button.onclick = () => ctx.patchAnswer(component.id, criterionId, { status });
    toggles.appendChild(button);
  }
  item.appendChild(toggles);
  return item;
}
