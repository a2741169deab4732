"""
COLOR ALGEBRA ENGINE - FASTAPI SERVER
=====================================
REST API over the constructions, validators and realizations
"""

import logging
import os
import sys
from datetime import datetime
from typing import Any, Dict, List, Optional

import uvicorn
from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

# Add current directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import Check, RealizeMode, run_checks, run_realization
from config_loader import get_config, setup_logging
from constructions import CONSTRUCTIONS, build_construction
from errors import EngineError
from factor import CommutationFactor
from grading import AbelianGroup
from oscillator import MIN_LAMBDA_MULTIPLICITY
from schemas import set_counterexample_limit
from spec_format import algebra_to_spec, parse_spec_dict

logger = logging.getLogger(__name__)

VERSION = "1.0.0"


# Request/Response models
class FactorRequest(BaseModel):
    group: List[int] = Field(default_factory=list)
    exponents: Optional[List[List[int]]] = None
    root_order: Optional[int] = None

    def build(self) -> CommutationFactor:
        G = AbelianGroup(tuple(self.group))
        if self.exponents is None:
            return CommutationFactor.trivial(G, self.root_order)
        L = self.root_order or max(2, G.exponent)
        return CommutationFactor(G, L, tuple(tuple(r) for r in self.exponents))


class BuildRequest(BaseModel):
    construction: str
    sizes: Optional[List[int]] = None
    factor: FactorRequest = Field(default_factory=FactorRequest)
    block_degrees: Optional[List[List[int]]] = None
    triple_sizes: Optional[List[List[int]]] = None
    n: int = 3
    p: int = 2
    base: Optional[str] = None
    elementary: bool = False
    dim: int = 4
    variant: str = "clifford_tensor_gl"
    source: str = "clifford"
    kind: str = "color_lie"
    m: int = 1
    spec: Optional[Dict[str, Any]] = None  # input algebra for decolor
    include_representation: bool = True


class VerifyRequest(BaseModel):
    spec: Dict[str, Any]
    checks: Optional[List[Check]] = None
    budget: Optional[int] = Field(default=None, gt=0)
    seed: Optional[int] = None


class RealizeRequest(BaseModel):
    spec: Dict[str, Any]
    mode: RealizeMode = RealizeMode.oscillator
    epsilon: int = 1
    multiplicity: Optional[int] = Field(default=None, ge=MIN_LAMBDA_MULTIPLICITY)
    budget: Optional[int] = Field(default=None, gt=0)
    seed: Optional[int] = None


class HealthResponse(BaseModel):
    status: str
    timestamp: str
    version: str


# Initialize FastAPI app
app = FastAPI(
    title="Color Algebra Engine",
    description="Exact construction and verification of color Lie (super)algebras and their realizations",
    version=VERSION
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

config = get_config()
setup_logging(config.log_level)
set_counterexample_limit(config.max_counterexamples)


@app.exception_handler(EngineError)
async def engine_error_handler(request: Request, exc: EngineError):
    logger.info("%s %s rejected: %s", request.method, request.url.path, exc.code)
    return JSONResponse(status_code=422, content={"error": exc.to_dict()})


@app.get("/", response_model=Dict[str, Any])
async def root():
    """Root endpoint with API info"""
    return {
        "name": "Color Algebra Engine",
        "version": VERSION,
        "status": "running",
        "endpoints": {
            "health": "/health",
            "constructions": "/constructions",
            "build": "/build",
            "verify": "/verify",
            "realize": "/realize",
        }
    }


@app.get("/health", response_model=HealthResponse)
async def health():
    """Health check endpoint"""
    return HealthResponse(
        status="healthy",
        timestamp=datetime.now().isoformat(),
        version=VERSION
    )


@app.get("/constructions")
async def constructions():
    """Names accepted by POST /build"""
    return {"constructions": list(CONSTRUCTIONS)}


@app.post("/build")
def build(request: BuildRequest):
    """Build a named construction and return its spec document"""
    try:
        factor = request.factor.build()
        params: Dict[str, Any] = {
            "n": request.n, "p": request.p, "elementary": request.elementary, "dim": request.dim,
            "variant": request.variant, "source": request.source, "kind": request.kind,
            "m": request.m, "factor": factor,
        }
        if request.sizes is not None:
            params["sizes"] = tuple(request.sizes)
        if request.base is not None:
            params["base"] = request.base
        if request.block_degrees is not None:
            params["block_degrees"] = [tuple(d) for d in request.block_degrees]
        if request.triple_sizes is not None:
            params["block_sizes"] = [tuple(s) for s in request.triple_sizes]
            params["factors"] = (factor, factor, factor)
        if request.construction == "decolor":
            if request.spec is None:
                raise HTTPException(status_code=422, detail="decolor needs an input spec")
            params["algebra"] = parse_spec_dict(request.spec, "request").algebra
        result = build_construction(request.construction, params)
    except (KeyError, ValueError) as e:
        raise HTTPException(status_code=422, detail=f"missing or invalid parameter: {e}")

    rep = result.representation if request.include_representation else None
    spec = algebra_to_spec(result.algebra, rep, result.multiplier, result.colored_factor)
    return spec.model_dump(mode="json", exclude_none=True)


@app.post("/verify")
def verify(request: VerifyRequest):
    """Run validators on a spec document and return the report"""
    result = parse_spec_dict(request.spec, "request")
    doc = run_checks(
        result, request.checks,
        request.budget or config.budget,
        config.seed if request.seed is None else request.seed,
        result.algebra.name or "request",
    )
    return doc.to_dict()


@app.post("/realize")
def realize(request: RealizeRequest):
    """Run a realization check on a spec document and return the report"""
    if request.epsilon not in (1, -1):
        raise HTTPException(status_code=422, detail="epsilon must be +1 or -1")
    result = parse_spec_dict(request.spec, "request")
    doc = run_realization(
        result, request.mode, request.epsilon,
        request.multiplicity or config.lambda_multiplicity,
        request.budget or config.budget,
        config.seed if request.seed is None else request.seed,
        result.algebra.name or "request",
    )
    return doc.to_dict()


# Run server
if __name__ == "__main__":
    port = int(os.getenv("PORT", 8000))
    logger.warning("Starting server on port %d", port)
    uvicorn.run(app, host="0.0.0.0", port=port)
