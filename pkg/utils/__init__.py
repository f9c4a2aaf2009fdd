# utils/__init__.py
# 日誌、錯誤類別、有理數陣列與摘要等共用工具
