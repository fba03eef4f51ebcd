import { AdviceClient } from "./api";
import { SessionModel } from "./session";
import { AdvisorApp } from "./ui";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const names = new URLSearchParams(location.search).get("players");
const session = new SessionModel(
  names ? names.split(",").map((s) => s.trim()) : ["you", "opponent"],
);
new AdvisorApp(session, new AdviceClient(""), root).start();
