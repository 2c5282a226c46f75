/** Activity 1 (step 1): the systems page — create, pick, delete. */
import type { AppContext } from "../context";

export function renderDefine(root: HTMLElement, ctx: AppContext): void {
  const { systems, system } = ctx.store.get();

  const page = document.createElement("section");
  page.className = "page";
  const heading = document.createElement("h2");
  heading.textContent = "Step 1 - Define the system";
  page.appendChild(heading);

  const hint = document.createElement("p");
  hint.className = "hint";
  hint.textContent =
    "Name the system under evaluation. Keep notes about its architecture and " +
    "use cases in the description; the classification itself starts from the " +
    "components you add next.";
  page.appendChild(hint);

  const form = document.createElement("form");
  form.className = "row";
  const name = document.createElement("input");
  name.placeholder = "system name";
  name.id = "system-name";
  name.required = true;
  const description = document.createElement("input");
  description.placeholder = "description (optional)";
  description.id = "system-description";
  const submit = document.createElement("button");
  submit.textContent = "Create system";
  form.append(name, description, submit);
  form.onsubmit = async (event) => {
    event.preventDefault();
    if (!name.value.trim()) return;
    await ctx.createSystem(name.value.trim(), description.value.trim());
    form.reset();
  };
  page.appendChild(form);

  const list = document.createElement("ul");
  list.className = "system-list";
  for (const summary of systems) {
    const item = document.createElement("li");
    if (system?.id === summary.id) item.classList.add("active");

    const pick = document.createElement("button");
    pick.className = "link";
    pick.textContent = summary.name;
    pick.onclick = () => ctx.selectSystem(summary.id);

    const meta = document.createElement("span");
    meta.className = "meta";
    const freshness = summary.results_freshness === "stale" ? " (stale)" : "";
    meta.textContent =
      ` ${summary.component_count} component(s)` +
      (summary.last_class ? `, last class ${summary.last_class}${freshness}` : "");

    const remove = document.createElement("button");
    remove.className = "danger";
    remove.textContent = "delete";
    remove.onclick = () => ctx.deleteSystem(summary.id);

    item.append(pick, meta, remove);
    list.appendChild(item);
  }
  if (systems.length === 0) {
    const empty = document.createElement("li");
    empty.className = "hint";
    empty.textContent = "No systems yet.";
    list.appendChild(empty);
  }
  page.appendChild(list);
  root.appendChild(page);
}
