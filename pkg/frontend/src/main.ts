import { ApiClient } from "./api.js";
import { Workbench } from "./app.js";

const params = new URLSearchParams(window.location.search);
const serviceUrl =
  params.get("service") ??
  window.localStorage.getItem("semgraph.service") ??
  "http://127.0.0.1:8747";
window.localStorage.setItem("semgraph.service", serviceUrl);

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
const workbench = new Workbench(root, new ApiClient(serviceUrl));
void workbench.init();
