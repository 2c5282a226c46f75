/** Shell: activity navigation with the 1-10 step indicator, help
 * sidebar on every page, and coarse re-render on state change. */
import { ApiClient } from "./api";
import { AppContext } from "./context";
import { buildHelpSidebar } from "./help";
import { renderAssess } from "./views/assess";
import { renderClassView } from "./views/classview";
import { renderComponents } from "./views/components";
import { renderDefine } from "./views/define";
import type { Activity } from "./wizard";
import { STEPS, canEnterActivity, stepComplete } from "./wizard";

const ACTIVITIES: { id: Activity; label: string }[] = [
  { id: "define", label: "1. Define" },
  { id: "components", label: "2-7. Components" },
  { id: "assess", label: "8. Assess" },
  { id: "compute", label: "9-10. Class" },
];

const VIEWS: Record<Activity, (root: HTMLElement, ctx: AppContext) => void> = {
  define: renderDefine,
  components: renderComponents,
  assess: renderAssess,
  compute: renderClassView,
};

export function mountApp(root: HTMLElement, ctx: AppContext): void {
  const shell = document.createElement("div");
  shell.className = "shell";

  const header = document.createElement("header");
  const title = document.createElement("h1");
  title.textContent = "Security class assessment";
  header.appendChild(title);
  const { root: sidebar, toggle } = buildHelpSidebar();
  header.appendChild(toggle);

  const nav = document.createElement("nav");
  nav.className = "activities";
  const stepsBar = document.createElement("ol");
  stepsBar.className = "steps";
  const errorBox = document.createElement("p");
  errorBox.className = "error";
  errorBox.id = "error";
  const content = document.createElement("main");

  shell.append(header, nav, stepsBar, errorBox, content);
  root.replaceChildren(shell, sidebar);

  function sync(): void {
    const state = ctx.store.get();

    nav.replaceChildren(
      ...ACTIVITIES.map(({ id, label }) => {
        const button = document.createElement("button");
        button.textContent = label;
        button.dataset.activity = id;
        const enterable = canEnterActivity(id, state.system, state.wizard);
        button.disabled = !enterable;
        button.className = state.route === id ? "activity active" : "activity";
        button.onclick = () => ctx.navigate(id);
        return button;
      }),
    );

    stepsBar.replaceChildren(
      ...STEPS.map((step) => {
        const item = document.createElement("li");
        item.value = step.step;
        item.title = step.title;
        item.textContent = String(step.step);
        if (stepComplete(step.step, state.system, state.wizard)) item.classList.add("done");
        return item;
      }),
    );

    errorBox.textContent = state.error ?? "";
    errorBox.style.display = state.error ? "block" : "none";

    content.replaceChildren();
    VIEWS[state.route](content, ctx);
  }

  ctx.store.subscribe(sync);
  sync();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const ctx = new AppContext(new ApiClient("/api"));
  mountApp(document.getElementById("app")!, ctx);
  void ctx.bootstrap();
}
