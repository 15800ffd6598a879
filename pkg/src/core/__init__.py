"""txcap 数值核心：解析公式、界与蒙特卡洛仿真"""
