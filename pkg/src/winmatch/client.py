"""Thin HTTP client for the winmatch service.

The CLI talks to the service exclusively through this client.  Without a base
URL the client mounts the application in-process (same wire format, no
socket); with one it talks to a remote instance over HTTP.
"""

from __future__ import annotations

import warnings
from typing import Any

import httpx


class ServiceError(RuntimeError):
    """Non-2xx response; carries the service's machine-readable error code."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.status = status
        self.code = code
        self.message = message


class ServiceClient:
    def __init__(self, base_url: str | None = None, timeout: float = 300.0):
        if base_url is None:
            # In-process transport against a fresh app instance.
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client: Any = TestClient(create_app())
        else:
            self._client = httpx.Client(base_url=base_url, timeout=timeout)

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "ServiceClient":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    def _request(self, method: str, path: str, payload: dict | None = None) -> Any:
        response = self._client.request(method, path, json=payload)
        if response.status_code >= 400:
            detail: Any = None
            try:
                detail = response.json().get("detail")
            except Exception:
                pass
            if isinstance(detail, dict) and "error_code" in detail:
                raise ServiceError(
                    response.status_code,
                    detail["error_code"],
                    detail.get("message", ""),
                )
            raise ServiceError(
                response.status_code, "http_error", response.text[:500]
            )
        if response.status_code == 204:
            return None
        return response.json()

    # Stateless endpoints -------------------------------------------------

    def health(self) -> dict:
        return self._request("GET", "/v1/health")

    def generate(self, **payload: Any) -> dict:
        return self._request("POST", "/v1/generate", payload)

    def replay(self, **payload: Any) -> dict:
        return self._request("POST", "/v1/replay", payload)

    def evaluate(self, **payload: Any) -> dict:
        return self._request("POST", "/v1/evaluate", payload)

    def audit(self, **payload: Any) -> dict:
        return self._request("POST", "/v1/audit", payload)

    def verify_hard(self, **payload: Any) -> dict:
        return self._request("POST", "/v1/verify-hard", payload)

    def oracle_mwm(self, **payload: Any) -> dict:
        return self._request("POST", "/v1/oracle/mwm", payload)

    # Sessions -------------------------------------------------------------

    def create_session(self, **payload: Any) -> dict:
        return self._request("POST", "/v1/sessions", payload)

    def session_info(self, session_id: str) -> dict:
        return self._request("GET", f"/v1/sessions/{session_id}")

    def send_event(self, session_id: str, **payload: Any) -> dict:
        return self._request("POST", f"/v1/sessions/{session_id}/events", payload)

    def delete_session(self, session_id: str) -> None:
        self._request("DELETE", f"/v1/sessions/{session_id}")
