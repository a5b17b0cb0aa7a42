"""HTTP endpoints, exercised in-process through the ASGI interface."""

import asyncio

import httpx

from lulukit.service import app

F1_DOC = {
    "domain": [0, 4],
    "breakpoints": [
        {"x": 0, "value": 0},
        {"x": 1, "value": 0, "right_limit": 1},
        {"x": 2, "value": 0, "left_limit": 1},
        {"x": 4, "value": 0},
    ],
}

IDENT_DOC = {
    "domain": [0, 4],
    "breakpoints": [{"x": 0, "value": 0}, {"x": 4, "value": 4}],
}


def post(path, payload):
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as c:
            return await c.post(path, json=payload)

    return asyncio.run(go())


def get(path):
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as c:
            return await c.get(path)

    return asyncio.run(go())


def test_health():
    resp = get("/health")
    assert resp.status_code == 200 and resp.json() == {"status": "ok"}


class TestSmooth:
    def test_function_pulse_annihilated(self):
        resp = post("/smooth", {"function": F1_DOC, "expr": "L", "delta": 1.0})
        assert resp.status_code == 200
        out = resp.json()
        assert out["sup_distance"] == 1.0
        for b in out["function"]["breakpoints"]:
            assert abs(b["value"]) == 0.0

    def test_signal_path(self):
        resp = post(
            "/smooth",
            {"signal": {"values": [0, 0, 5, 0, 0]}, "expr": "L", "discrete_n": 1},
        )
        assert resp.status_code == 200
        out = resp.json()
        assert out["signal"]["values"] == [0, 0, 0, 0, 0]
        assert out["sup_distance"] == 5.0

    def test_requires_exactly_one_input(self):
        assert post("/smooth", {"expr": "L", "delta": 1.0}).status_code == 422
        assert (
            post(
                "/smooth",
                {
                    "function": IDENT_DOC,
                    "signal": {"values": [1.0]},
                    "expr": "L",
                    "delta": 1.0,
                    "discrete_n": 1,
                },
            ).status_code
            == 422
        )

    def test_missing_width(self):
        assert post("/smooth", {"function": IDENT_DOC, "expr": "L"}).status_code == 422
        assert post("/smooth", {"signal": {"values": [1.0]}, "expr": "L"}).status_code == 422

    def test_bad_expression(self):
        resp = post("/smooth", {"function": IDENT_DOC, "expr": "LX", "delta": 1.0})
        assert resp.status_code == 422

    def test_bad_delta(self):
        resp = post("/smooth", {"function": IDENT_DOC, "expr": "L", "delta": -1.0})
        assert resp.status_code == 422


class TestDecompose:
    def test_identity_report(self):
        resp = post("/decompose", {"function": IDENT_DOC, "expr": "L", "delta": 1.0})
        assert resp.status_code == 200
        rep = resp.json()["report"]
        assert rep == {"tv_f": 4.0, "tv_smooth": 3.5, "tv_residual": 0.5, "defect": 0.0}

    def test_components_returned(self):
        resp = post("/decompose", {"function": F1_DOC, "expr": "L", "delta": 1.0})
        out = resp.json()
        assert out["report"]["tv_residual"] == 2.0
        assert "breakpoints" in out["smooth"] and "breakpoints" in out["residual"]


class TestVerify:
    def test_laws_hold(self):
        resp = post("/verify", {"function": F1_DOC, "delta": 1.0})
        assert resp.status_code == 200
        out = resp.json()
        assert out["ok"] is True
        assert len(out["laws"]) == 9
        for law in out["laws"]:
            assert law["ok"] and law["worst"] <= 1e-9

    def test_law_subset(self):
        resp = post(
            "/verify", {"function": IDENT_DOC, "delta": 1.0, "laws": ["bounding", "tv"]}
        )
        out = resp.json()
        assert [law["name"] for law in out["laws"]] == ["bounding", "tv"]

    def test_unknown_law(self):
        resp = post("/verify", {"function": IDENT_DOC, "delta": 1.0, "laws": ["nope"]})
        assert resp.status_code == 422

    def test_bad_delta(self):
        resp = post("/verify", {"function": IDENT_DOC, "delta": 0.0})
        assert resp.status_code == 422

    def test_violation_reported(self, monkeypatch):
        import lulukit.laws as laws_mod

        monkeypatch.setattr(laws_mod, "apply_L", lambda f, d: f.shift(1.0))
        resp = post("/verify", {"function": IDENT_DOC, "delta": 1.0, "laws": ["bounding"]})
        out = resp.json()
        assert out["ok"] is False
        assert out["laws"][0]["worst"] >= 1.0


class TestPlot:
    def test_svg_and_csv(self):
        resp = post("/plot", {"function": F1_DOC, "expr": "LU", "delta": 1.0, "samples": 200})
        assert resp.status_code == 200
        out = resp.json()
        assert out["svg"].startswith("<svg") and "polyline" in out["svg"]
        assert out["csv"].splitlines()[0] == "x,input,output"
        assert len(out["csv"].splitlines()) >= 201
