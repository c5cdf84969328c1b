import { ApiClient } from "./api.js";
import { ChatController } from "./chat.js";

document.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const controller = new ChatController(root, new ApiClient(""));
  void controller.start();
});
