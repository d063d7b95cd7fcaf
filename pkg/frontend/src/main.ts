import { ApiClient } from "./api";
import { App } from "./app";

// Service base URL: ?api=... query parameter, else same-origin default port.
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "http://127.0.0.1:8420";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

void new App(new ApiClient(baseUrl), root).start();
