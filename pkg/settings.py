import os
from dotenv import load_dotenv

load_dotenv()

VERSION = "0.1.0"
LOG_LEVEL = os.getenv("LOCI_LOG_LEVEL", "WARNING")

TOL_SYM = float(os.getenv("LOCI_TOL_SYM", "1e-10"))
TOL_ORTH = float(os.getenv("LOCI_TOL_ORTH", "1e-10"))
TOL_PD = float(os.getenv("LOCI_TOL_PD", "1e-12"))
TOL_SING = float(os.getenv("LOCI_TOL_SING", "1e-12"))
TOL_EIG = float(os.getenv("LOCI_TOL_EIG", "1e-8"))
TOL_RANK = float(os.getenv("LOCI_TOL_RANK", "1e-8"))
TOL_CLUSTER = float(os.getenv("LOCI_TOL_CLUSTER", "1e-6"))
ANGLE_GAP = float(os.getenv("LOCI_ANGLE_GAP", "1e-7"))
TOL_RESIDUAL = float(os.getenv("LOCI_TOL_RESIDUAL", "1e-8"))
TOL_DET_UNIT = float(os.getenv("LOCI_TOL_DET_UNIT", "1e-9"))
KERNEL_THRESHOLD = float(os.getenv("LOCI_KERNEL_THRESHOLD", "1e-6"))

SAMPLE_SCALE = float(os.getenv("LOCI_SAMPLE_SCALE", "0.5"))
SAMPLES = int(os.getenv("LOCI_SAMPLES", "10"))
