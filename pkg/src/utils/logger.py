import logging
import os
import sys

from config import LOG_FILE_SAVE, LOG_FILE_NAME, LOG_LEVEL, LOG_FORMAT

# 第一步：使用根日志对象，库模块里的 getLogger(__name__) 都会冒泡到这里
logger = logging.getLogger()
logger.setLevel(LOG_LEVEL)
fmt = logging.Formatter(fmt=LOG_FORMAT)

# 第二步：配置日志文件保存
if LOG_FILE_SAVE:
    file_path = os.path.join(os.getcwd(), LOG_FILE_NAME)
    file_handler = logging.FileHandler(file_path, mode="a", encoding="utf-8")
    file_handler.setLevel(LOG_LEVEL)
    file_handler.setFormatter(fmt)
    logger.addHandler(file_handler)

# 第三步：控制台处理器写 stderr，stdout 只留给计算结果
console_handler = logging.StreamHandler(stream=sys.stderr)
console_handler.setLevel(LOG_LEVEL)
console_handler.setFormatter(fmt)
# 第四步：添加进日志器对象中
logger.addHandler(console_handler)


def set_level(level):
    """调整日志级别（CLI 的 --verbose / --quiet 使用）"""
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)
