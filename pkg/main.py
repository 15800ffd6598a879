import sys

# 导入即完成日志配置：stderr 输出日志，stdout 只输出结果
from src.utils import logger  # noqa: F401
from src.cli import main


if __name__ == '__main__':
    # 用法示例: python main.py eval basic-op --lambda 0.1 --tau 5
    sys.exit(main())
