import { ApiClient } from "./api.js";
import { ExplorerApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "http://127.0.0.1:8471";
const app = new ExplorerApp(new ApiClient(base), document);
app.attach();
app.newSession(3, "central:0");

declare global {
  interface Window {
    explorer: ExplorerApp;
  }
}
window.explorer = app;
