import logging
import os

# 配置日志信息
LOG_FILE_SAVE = False
LOG_FILE_NAME = "txcap.log"
LOG_LEVEL = logging.INFO
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

# 预设参数文件（figure/eval 使用）
PRESET_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")

# 蒙特卡洛默认配置：试验次数，随机种子，每个分块的试验数
MC_DEFAULT_TRIALS = 100000
MC_DEFAULT_SEED = 20111205
MC_CHUNK_TRIALS = 10000
# 截断窗口：被截掉的干扰均值不超过 ξ^{-α} 的这个比例
MC_WINDOW_TOLERANCE = 1e-3
# 置信水平
MC_CONFIDENCE = 0.99
# 估计TC时二分的最大次数
MC_TC_MAXITER = 40

# 工作线程上限，环境变量 TXCAP_THREADS 可覆盖
MAX_WORKERS = max(1, int(os.environ.get("TXCAP_THREADS", os.cpu_count() or 1)))

# 求根/搜索精度
SOLVER_XTOL = 1e-10
SOLVER_MAXITER = 500

# Rayleigh 积分截断点（尾部质量 < e^{-50}）
RAYLEIGH_TRUNCATION = 50.0

# 级数展开的可信区域：参数上限
SERIES_ARGUMENT_MAX = 1.0
SERIES_TERMS = 60

# CSV 输出的有效位数
CSV_DIGITS = 17
