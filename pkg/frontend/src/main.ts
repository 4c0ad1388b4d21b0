import { Api } from "./api.js";
import { mountApp } from "./app.js";

window.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (root) {
    const app = mountApp(root, new Api(""), window);
    void app.start();
  }
});
